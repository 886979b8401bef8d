//! The cluster state system for pattern-avoiding compositions.
//!
//! A cluster is a chain of pattern occurrences (violations) at increasing
//! start columns, consecutive starts at most `a-1` apart, with several
//! patterns allowed to share a start column. Its state is the first `a`
//! entries of its skyline (columnwise maximum). For each state `s` the
//! unknown `B_s(x, t)` enumerates clusters of that state by
//! `x^(skyline sum) * t^width`, signed `(-1)^violations` — or weighted
//! `prod (X_i - 1)` per violation when occurrences are being tracked.
//!
//! Peeling the first block off a multi-block cluster yields the linear
//! system `(I - W) B = terminal`. Summing the solved `B_s` and substituting
//! `t -> 1/(1-x)` gives the cluster generating function `G`, and finally
//! `F = 1 / (1 - x/(1-x) - G)`.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::composition::{Composition, PatternSet, PatternSetError};
use crate::linsys::{solve_linear_system, LinSysError};
use crate::poly::{Poly, Var};
use crate::ratfun::{RatFun, RatFunError};

/// Whether cluster weights carry plain signs or occurrence markers.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// Sign `(-1)^violations`: yields the avoider generating function.
    Plain,
    /// Weight `prod_i (X_i - 1)^(occurrences of pattern i)`: yields the
    /// occurrence-tracking generating function.
    Marker,
}

/// First `a` entries of a cluster's skyline.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct State(Vec<u32>);

impl State {
    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&e| e <= 9) {
            for e in &self.0 {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let s: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", s.join(","))
        }
    }
}

/// A nonempty set of pattern indices whose violations share a start column.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupSubset(Vec<usize>);

impl GroupSubset {
    pub fn new(mut members: Vec<usize>) -> Result<Self, EngineError> {
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(EngineError::EmptySubset);
        }
        Ok(GroupSubset(members))
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    fn from_mask(mask: u64) -> Self {
        GroupSubset((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("group subset must be nonempty")]
    EmptySubset,
    #[error("pattern index {index} out of range for {count} patterns")]
    PatternIndex { index: usize, count: usize },
    #[error("overlap offset {offset} out of range 1..={max}")]
    OffsetOutOfRange { offset: usize, max: usize },
    #[error("at most {max} patterns supported, got {count}")]
    TooManyPatterns { count: usize, max: usize },
    #[error(transparent)]
    PatternSet(#[from] PatternSetError),
    #[error("cluster system is singular: {0}")]
    Singular(LinSysError),
    #[error(transparent)]
    RatFun(#[from] RatFunError),
}

const MAX_PATTERNS: usize = 24;

/// Columnwise maximum of the subset's patterns.
pub fn subset_skyline(subset: &GroupSubset, set: &PatternSet) -> Result<State, EngineError> {
    let a = set.common_length();
    let mut entries = vec![0u32; a];
    for &i in subset.members() {
        let pattern = set
            .patterns()
            .get(i)
            .ok_or(EngineError::PatternIndex {
                index: i,
                count: set.marker_count(),
            })?;
        for (slot, &part) in entries.iter_mut().zip(pattern.parts()) {
            *slot = (*slot).max(part);
        }
    }
    Ok(State(entries))
}

fn subset_sign(subset: &GroupSubset, mode: Mode) -> Poly {
    match mode {
        Mode::Plain => {
            if subset.members().len() % 2 == 1 {
                Poly::constant_i64(-1)
            } else {
                Poly::one()
            }
        }
        Mode::Marker => subset.members().iter().fold(Poly::one(), |acc, &i| {
            let marker = Poly::variable(Var::Marker(i as u8));
            acc.mul(&marker.sub(&Poly::one()))
        }),
    }
}

/// Put the subset's block on top of a child cluster at overlap offset `j`
/// (the child starts `j` columns later). Returns the parent state and the
/// transition weight `sign * x^(sum(parent) - sum(child[..a-j])) * t^j`.
pub fn merge_state(
    subset: &GroupSubset,
    j: usize,
    child: &State,
    set: &PatternSet,
    mode: Mode,
) -> Result<(State, Poly), EngineError> {
    let a = set.common_length();
    if j == 0 || j >= a {
        return Err(EngineError::OffsetOutOfRange {
            offset: j,
            max: a.saturating_sub(1),
        });
    }
    let sigma = subset_skyline(subset, set)?;
    let mut entries = sigma.0.clone();
    for i in j..a {
        entries[i] = entries[i].max(child.0[i - j]);
    }
    let parent = State(entries);
    let child_prefix: u64 = child.0[..a - j].iter().map(|&e| e as u64).sum();
    let exponent = (parent.sum() - child_prefix) as u32;
    let weight = subset_sign(subset, mode).mul(&Poly::monomial(
        BigRational::from_integer(1.into()),
        &[(Var::X, exponent), (Var::T, j as u32)],
    ));
    Ok((parent, weight))
}

fn nonempty_subsets(r: usize) -> impl Iterator<Item = GroupSubset> {
    (1..(1u64 << r)).map(GroupSubset::from_mask)
}

/// All states, by least-fixed-point closure: start from the subset
/// skylines and add merge results until nothing new appears. Returned in
/// lexicographic order.
pub fn enumerate_states(set: &PatternSet) -> Result<Vec<State>, EngineError> {
    let r = set.marker_count();
    if r > MAX_PATTERNS {
        return Err(EngineError::TooManyPatterns {
            count: r,
            max: MAX_PATTERNS,
        });
    }
    let a = set.common_length();
    let mut known: BTreeSet<State> = BTreeSet::new();
    let mut queue: Vec<State> = Vec::new();
    for subset in nonempty_subsets(r) {
        let s = subset_skyline(&subset, set)?;
        if known.insert(s.clone()) {
            queue.push(s);
        }
    }
    while let Some(child) = queue.pop() {
        for subset in nonempty_subsets(r) {
            for j in 1..a {
                let (parent, _) = merge_state(&subset, j, &child, set, Mode::Plain)?;
                if known.insert(parent.clone()) {
                    queue.push(parent);
                }
            }
        }
    }
    Ok(known.into_iter().collect())
}

/// The linear system `(I - W) B = terminal` over states.
#[derive(Clone, Debug)]
pub struct ClusterSystem {
    pub states: Vec<State>,
    /// `transitions[parent][child]`: total weight of merges landing on
    /// `parent` with the given child state.
    pub transitions: Vec<Vec<Poly>>,
    /// One-block clusters per state: `sum over subsets with that skyline`.
    pub terminal: Vec<Poly>,
    pub mode: Mode,
}

impl ClusterSystem {
    /// Matrix `I - W` in state order.
    pub fn matrix(&self) -> Vec<Vec<Poly>> {
        let n = self.states.len();
        let mut m = vec![vec![Poly::zero(); n]; n];
        for (i, row) in self.transitions.iter().enumerate() {
            for (j, w) in row.iter().enumerate() {
                m[i][j] = if i == j {
                    Poly::one().sub(w)
                } else {
                    w.neg()
                };
            }
        }
        m
    }
}

pub fn build_system(set: &PatternSet, mode: Mode) -> Result<ClusterSystem, EngineError> {
    let a = set.common_length();
    let r = set.marker_count();
    let states = enumerate_states(set)?;
    let index = |s: &State| states.binary_search(s).expect("state in closure");
    let n = states.len();
    let mut transitions = vec![vec![Poly::zero(); n]; n];
    let mut terminal = vec![Poly::zero(); n];

    for subset in nonempty_subsets(r) {
        let sigma = subset_skyline(&subset, set)?;
        let i = index(&sigma);
        let weight = subset_sign(&subset, mode).mul(&Poly::monomial(
            BigRational::from_integer(1.into()),
            &[(Var::X, sigma.sum() as u32), (Var::T, a as u32)],
        ));
        terminal[i] = terminal[i].add(&weight);
    }
    for (c, child) in states.iter().enumerate() {
        for subset in nonempty_subsets(r) {
            for j in 1..a {
                let (parent, weight) = merge_state(&subset, j, child, set, mode)?;
                let p = index(&parent);
                transitions[p][c] = transitions[p][c].add(&weight);
            }
        }
    }
    Ok(ClusterSystem {
        states,
        transitions,
        terminal,
        mode,
    })
}

/// Everything one engine run produces.
#[derive(Clone, Debug)]
pub struct EngineResult {
    pub states: Vec<State>,
    /// Solved `B_s(x, t)` in state order (markers included in marker mode).
    pub b: Vec<RatFun>,
    /// `sum B_s` before the `t` substitution.
    pub g_poids: RatFun,
    /// Cluster generating function `G` after `t -> 1/(1-x)`.
    pub g: RatFun,
    /// `F = 1 / (1 - x/(1-x) - G)`.
    pub f: RatFun,
    pub mode: Mode,
}

impl EngineResult {
    pub fn states_count(&self) -> usize {
        self.states.len()
    }
}

fn t_substitution() -> RatFun {
    RatFun::new(Poly::one(), Poly::one().sub(&Poly::variable(Var::X))).expect("1-x is nonzero")
}

fn final_gf(g: &RatFun) -> Result<RatFun, EngineError> {
    let x_over = RatFun::new(
        Poly::variable(Var::X),
        Poly::one().sub(&Poly::variable(Var::X)),
    )
    .expect("1-x is nonzero");
    Ok(RatFun::one().sub(&x_over).sub(g).inverse()?)
}

pub fn solve_system(system: &ClusterSystem) -> Result<Vec<RatFun>, EngineError> {
    solve_linear_system(&system.matrix(), &system.terminal).map_err(EngineError::Singular)
}

fn engine_run(set: &PatternSet, mode: Mode) -> Result<EngineResult, EngineError> {
    let system = build_system(set, mode)?;
    let b = solve_system(&system)?;
    let mut g_poids = RatFun::zero();
    for bs in &b {
        g_poids = g_poids.add(bs);
    }
    let g = g_poids.substitute(Var::T, &t_substitution())?;
    let f = final_gf(&g)?;
    Ok(EngineResult {
        states: system.states,
        b,
        g_poids,
        g,
        f,
        mode,
    })
}

/// Cluster generating function `G` alone (after the `t` substitution).
pub fn cluster_gf(set: &PatternSet, mode: Mode) -> Result<RatFun, EngineError> {
    Ok(engine_run(set, mode)?.g)
}

/// Generating function of compositions avoiding every pattern of `set`.
pub fn avoider_gf(set: &PatternSet) -> Result<EngineResult, EngineError> {
    engine_run(set, Mode::Plain)
}

/// Occurrence-tracking generating function `F(x; X_1..X_r)`: the
/// coefficient of `x^n X_1^c_1 ... X_r^c_r` counts compositions of `n`
/// with exactly `c_i` occurrences of pattern `i`.
pub fn joint_gf(set: &PatternSet) -> Result<EngineResult, EngineError> {
    engine_run(set, Mode::Marker)
}

/// Like [`avoider_gf`] but accepting an empty list, for which the answer
/// is the generating function of all compositions, `(1-x)/(1-2x)`.
pub fn avoider_gf_for(patterns: &[Composition]) -> Result<EngineResult, EngineError> {
    if patterns.is_empty() {
        let f = RatFun::new(
            Poly::one().sub(&Poly::variable(Var::X)),
            Poly::one().sub(&Poly::variable(Var::X).scale(&BigRational::from_integer(2.into()))),
        )
        .expect("denominator nonzero");
        return Ok(EngineResult {
            states: Vec::new(),
            b: Vec::new(),
            g_poids: RatFun::zero(),
            g: RatFun::zero(),
            f,
            mode: Mode::Plain,
        });
    }
    let set = PatternSet::new(patterns.to_vec())?;
    avoider_gf(&set)
}

/// States as skyline prefixes of explicitly generated clusters of width at
/// most `2a-1`; used to cross-check the closure construction.
pub fn states_by_cluster_enumeration(set: &PatternSet) -> Result<Vec<State>, EngineError> {
    let a = set.common_length();
    let r = set.marker_count();
    if r > MAX_PATTERNS {
        return Err(EngineError::TooManyPatterns {
            count: r,
            max: MAX_PATTERNS,
        });
    }
    let mut found: BTreeSet<State> = BTreeSet::new();
    // Blocks at start columns 1 = p_1 < p_2 < ... <= a with consecutive
    // gaps in 1..a-1 cover every cluster state (later blocks cannot touch
    // the first a columns).
    fn extend(
        set: &PatternSet,
        a: usize,
        r: usize,
        columns: &mut Vec<(usize, GroupSubset)>,
        found: &mut BTreeSet<State>,
    ) {
        let mut skyline = vec![0u32; a];
        for (col, subset) in columns.iter() {
            for &i in subset.members() {
                for (k, &part) in set.patterns()[i].parts().iter().enumerate() {
                    let idx = col - 1 + k;
                    if idx < a {
                        skyline[idx] = skyline[idx].max(part);
                    }
                }
            }
        }
        found.insert(State(skyline));
        let last = columns.last().map(|&(c, _)| c).unwrap();
        for gap in 1..a {
            let next = last + gap;
            if next > a {
                break;
            }
            for mask in 1..(1u64 << r) {
                columns.push((next, GroupSubset::from_mask(mask)));
                extend(set, a, r, columns, found);
                columns.pop();
            }
        }
    }
    for mask in 1..(1u64 << r) {
        let mut columns = vec![(1usize, GroupSubset::from_mask(mask))];
        extend(set, a, r, &mut columns, &mut found);
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::series_coefficients;

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }
    fn set(patterns: &[&[u32]]) -> PatternSet {
        PatternSet::new(patterns.iter().map(|p| comp(p)).collect()).unwrap()
    }
    fn x() -> Poly {
        Poly::variable(Var::X)
    }
    fn t() -> Poly {
        Poly::variable(Var::T)
    }
    fn int(c: i64) -> Poly {
        Poly::constant_i64(c)
    }
    fn subset(members: &[usize]) -> GroupSubset {
        GroupSubset::new(members.to_vec()).unwrap()
    }

    #[test]
    fn subset_skylines() {
        let a = set(&[&[2, 3, 2]]);
        assert_eq!(
            subset_skyline(&subset(&[0]), &a).unwrap().entries(),
            &[2, 3, 2]
        );
        let b = set(&[&[2, 5, 2], &[3, 4, 3], &[4, 2, 4]]);
        assert_eq!(
            subset_skyline(&subset(&[0, 1]), &b).unwrap().entries(),
            &[3, 5, 3]
        );
        assert_eq!(
            subset_skyline(&subset(&[0, 1, 2]), &b).unwrap().entries(),
            &[4, 5, 4]
        );
    }

    #[test]
    fn merge_examples() {
        let a = set(&[&[2, 3, 2]]);
        let child = State(vec![2, 3, 2]);

        let (s, w) = merge_state(&subset(&[0]), 1, &child, &a, Mode::Plain).unwrap();
        assert_eq!(s.entries(), &[2, 3, 3]);
        assert_eq!(w, x().pow(3).mul(&t()).neg());

        let (s, w) = merge_state(&subset(&[0]), 2, &child, &a, Mode::Plain).unwrap();
        assert_eq!(s.entries(), &[2, 3, 2]);
        assert_eq!(w, x().pow(5).mul(&t().pow(2)).neg());

        let child233 = State(vec![2, 3, 3]);
        let (s, w) = merge_state(&subset(&[0]), 2, &child233, &a, Mode::Plain).unwrap();
        assert_eq!(s.entries(), &[2, 3, 2]);
        assert_eq!(w, x().pow(5).mul(&t().pow(2)).neg());

        assert!(matches!(
            merge_state(&subset(&[0]), 3, &child, &a, Mode::Plain),
            Err(EngineError::OffsetOutOfRange { offset: 3, max: 2 })
        ));
    }

    #[test]
    fn states_for_232() {
        let states = enumerate_states(&set(&[&[2, 3, 2]])).unwrap();
        assert_eq!(states, vec![State(vec![2, 3, 2]), State(vec![2, 3, 3])]);
    }

    #[test]
    fn states_for_length_one() {
        let states = enumerate_states(&set(&[&[5]])).unwrap();
        assert_eq!(states, vec![State(vec![5])]);
    }

    #[test]
    fn system_for_232_matches_hand_derivation() {
        let sys = build_system(&set(&[&[2, 3, 2]]), Mode::Plain).unwrap();
        assert_eq!(sys.states.len(), 2);
        // terminal: only state 232 is a violation skyline
        assert_eq!(sys.terminal[0], x().pow(7).mul(&t().pow(3)).neg());
        assert_eq!(sys.terminal[1], Poly::zero());
        // transitions into 232: from 232 and 233, both -x^5 t^2
        let w52 = x().pow(5).mul(&t().pow(2)).neg();
        let w31 = x().pow(3).mul(&t()).neg();
        assert_eq!(sys.transitions[0][0], w52);
        assert_eq!(sys.transitions[0][1], w52);
        assert_eq!(sys.transitions[1][0], w31);
        assert_eq!(sys.transitions[1][1], w31);
    }

    #[test]
    fn terminal_only_system_for_length_one() {
        let sys = build_system(&set(&[&[5]]), Mode::Plain).unwrap();
        assert_eq!(sys.terminal[0], x().pow(5).mul(&t()).neg());
        assert_eq!(sys.transitions[0][0], Poly::zero());
        // F for {5} is 1/(1-x-x^2-x^3-x^4)
        let result = avoider_gf(&set(&[&[5]])).unwrap();
        let want = RatFun::new(
            int(1),
            int(1).sub(&x()).sub(&x().pow(2)).sub(&x().pow(3)).sub(&x().pow(4)),
        )
        .unwrap();
        let got = series_coefficients(&result.f, 20).unwrap();
        let expect = series_coefficients(&want, 20).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn solved_b_and_g_for_232() {
        let result = avoider_gf(&set(&[&[2, 3, 2]])).unwrap();
        let den = int(1)
            .add(&t().mul(&x().pow(3)))
            .add(&t().pow(2).mul(&x().pow(5)));
        let b232 = RatFun::new(
            int(1)
                .add(&t().mul(&x().pow(3)))
                .mul(&t().pow(3))
                .mul(&x().pow(7))
                .neg(),
            den.clone(),
        )
        .unwrap();
        let b233 = RatFun::new(t().pow(4).mul(&x().pow(10)), den.clone()).unwrap();
        assert!(result.b[0].equals(&b232));
        assert!(result.b[1].equals(&b233));

        let g_poids = RatFun::new(t().pow(3).mul(&x().pow(7)).neg(), den).unwrap();
        assert!(result.g_poids.equals(&g_poids));

        // G(x) = x^7 / ((1-2x+x^2+x^3-x^4+x^5)(x-1))
        let factor = int(1)
            .sub(&x().scale(&BigRational::from_integer(2.into())))
            .add(&x().pow(2))
            .add(&x().pow(3))
            .sub(&x().pow(4))
            .add(&x().pow(5));
        let g = RatFun::new(x().pow(7), factor.clone().mul(&x().sub(&int(1)))).unwrap();
        assert!(result.g.equals(&g));

        // F = -(1-2x+x^2+x^3-x^4+x^5)/(x^6-x^5+2x^4-x^3-2x^2+3x-1)
        let f_den = x()
            .pow(6)
            .sub(&x().pow(5))
            .add(&x().pow(4).scale(&BigRational::from_integer(2.into())))
            .sub(&x().pow(3))
            .sub(&x().pow(2).scale(&BigRational::from_integer(2.into())))
            .add(&x().scale(&BigRational::from_integer(3.into())))
            .sub(&int(1));
        let f = RatFun::new(factor.neg(), f_den).unwrap();
        assert!(result.f.equals(&f));
    }

    #[test]
    fn fibonacci_for_single_part_three() {
        let result = avoider_gf(&set(&[&[3]])).unwrap();
        let s = series_coefficients(&result.f, 10).unwrap();
        let ints: Vec<i64> = s
            .integers()
            .unwrap()
            .iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect();
        assert_eq!(ints, vec![1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]);
    }

    #[test]
    fn joint_gf_specializations() {
        let a = set(&[&[2, 3, 4], &[4, 3, 2]]);
        let joint = joint_gf(&a).unwrap();
        // All markers at 1: every composition counts once.
        let at_one = joint
            .f
            .substitute(Var::Marker(0), &RatFun::one())
            .unwrap()
            .substitute(Var::Marker(1), &RatFun::one())
            .unwrap();
        let all = RatFun::new(
            int(1).sub(&x()),
            int(1).sub(&x().scale(&BigRational::from_integer(2.into()))),
        )
        .unwrap();
        assert!(at_one.equals(&all));
        // All markers at 0: avoiders.
        let at_zero = joint
            .f
            .substitute(Var::Marker(0), &RatFun::zero())
            .unwrap()
            .substitute(Var::Marker(1), &RatFun::zero())
            .unwrap();
        let plain = avoider_gf(&a).unwrap();
        assert!(at_zero.equals(&plain.f));
        // Marker-mode G vanishes at all markers = 1.
        let g_at_one = joint
            .g
            .substitute(Var::Marker(0), &RatFun::one())
            .unwrap()
            .substitute(Var::Marker(1), &RatFun::one())
            .unwrap();
        assert!(g_at_one.is_zero());
    }

    #[test]
    fn empty_pattern_list_baseline() {
        let result = avoider_gf_for(&[]).unwrap();
        let s = series_coefficients(&result.f, 6).unwrap();
        let ints: Vec<i64> = s
            .integers()
            .unwrap()
            .iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect();
        assert_eq!(ints, vec![1, 1, 2, 4, 8, 16, 32]);
        assert_eq!(result.states_count(), 0);
    }

    #[test]
    fn closure_equals_cluster_enumeration_for_232() {
        let a = set(&[&[2, 3, 2]]);
        assert_eq!(
            enumerate_states(&a).unwrap(),
            states_by_cluster_enumeration(&a).unwrap()
        );
    }

    #[test]
    fn reversal_invariance_of_f() {
        let a = set(&[&[1, 3, 2], &[2, 1, 3]]);
        let fwd = avoider_gf(&a).unwrap();
        let rev = avoider_gf(&a.reversed()).unwrap();
        assert!(fwd.f.equals(&rev.f));
    }
}
