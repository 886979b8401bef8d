//! Compositions, pattern sets, and the containment relation.
//!
//! A composition is an ordered list of positive integers. A pattern
//! `b_1..b_s` occurs in a host `a_1..a_k` at offset `i` when every
//! `b_j <= a_{i+j-1}`, i.e. the pattern is dominated componentwise by a
//! window of consecutive parts.

use std::fmt;

use thiserror::Error;

/// An ordered list of positive integers. The empty list is the unique
/// composition of 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Composition {
    parts: Vec<u32>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CompositionError {
    #[error("composition parts must be positive (part {index} is 0)")]
    ZeroPart { index: usize },
    #[error("offset {offset} out of range 1..={max} for host of length {host_len}")]
    OffsetOutOfRange {
        offset: usize,
        max: usize,
        host_len: usize,
    },
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, CompositionError> {
        if let Some(index) = parts.iter().position(|&p| p == 0) {
            return Err(CompositionError::ZeroPart { index });
        }
        Ok(Composition { parts })
    }

    /// The empty composition of 0.
    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn reversed(&self) -> Self {
        let mut parts = self.parts.clone();
        parts.reverse();
        Composition { parts }
    }

    /// True iff `pattern` is dominated by the window of `self` starting at
    /// 1-based offset `i`.
    pub fn includes_at(&self, pattern: &Composition, i: usize) -> Result<bool, CompositionError> {
        let k = self.len();
        let s = pattern.len();
        if k < s || i == 0 || i > k - s + 1 {
            return Err(CompositionError::OffsetOutOfRange {
                offset: i,
                max: k.saturating_sub(s) + 1,
                host_len: k,
            });
        }
        Ok(self.dominates_window(pattern, i - 1))
    }

    fn dominates_window(&self, pattern: &Composition, start: usize) -> bool {
        pattern
            .parts
            .iter()
            .zip(&self.parts[start..])
            .all(|(&b, &a)| b <= a)
    }

    /// True iff `pattern` occurs in `self` at some offset.
    pub fn includes(&self, pattern: &Composition) -> bool {
        let (k, s) = (self.len(), pattern.len());
        if k < s {
            return false;
        }
        (0..=k - s).any(|start| self.dominates_window(pattern, start))
    }

    /// Number of offsets at which `pattern` occurs in `self`.
    pub fn occurrence_count(&self, pattern: &Composition) -> usize {
        let (k, s) = (self.len(), pattern.len());
        if k < s {
            return 0;
        }
        (0..=k - s)
            .filter(|&start| self.dominates_window(pattern, start))
            .count()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// A nonempty set of distinct forbidden patterns, all of one length.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PatternSet {
    patterns: Vec<Composition>,
    common_length: usize,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PatternSetError {
    #[error("pattern set must be nonempty")]
    Empty,
    #[error("pattern {index} is the empty composition")]
    EmptyPattern { index: usize },
    #[error("patterns must share one length: pattern {index} has length {found}, expected {expected}")]
    MixedLengths {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("pattern {index} duplicates an earlier pattern")]
    Duplicate { index: usize },
}

impl PatternSet {
    pub fn new(patterns: Vec<Composition>) -> Result<Self, PatternSetError> {
        if patterns.is_empty() {
            return Err(PatternSetError::Empty);
        }
        let common_length = patterns[0].len();
        for (index, p) in patterns.iter().enumerate() {
            if p.is_empty() {
                return Err(PatternSetError::EmptyPattern { index });
            }
            if p.len() != common_length {
                return Err(PatternSetError::MixedLengths {
                    index,
                    found: p.len(),
                    expected: common_length,
                });
            }
            if patterns[..index].contains(p) {
                return Err(PatternSetError::Duplicate { index });
            }
        }
        Ok(PatternSet {
            patterns,
            common_length,
        })
    }

    pub fn patterns(&self) -> &[Composition] {
        &self.patterns
    }

    /// The shared pattern length `a`.
    pub fn common_length(&self) -> usize {
        self.common_length
    }

    /// Number of patterns `r`.
    pub fn marker_count(&self) -> usize {
        self.patterns.len()
    }

    /// The set with every pattern reversed.
    pub fn reversed(&self) -> Self {
        PatternSet {
            patterns: self.patterns.iter().map(Composition::reversed).collect(),
            common_length: self.common_length,
        }
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.patterns.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(";"))
    }
}

/// Per-pattern occurrence counts for one host composition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OccurrenceVector(pub Vec<u32>);

impl OccurrenceVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// Count, for each pattern of `set`, the offsets at which it occurs in `host`.
pub fn occurrences(host: &Composition, set: &PatternSet) -> OccurrenceVector {
    OccurrenceVector(
        set.patterns()
            .iter()
            .map(|p| host.occurrence_count(p) as u32)
            .collect(),
    )
}

/// True iff no pattern of `set` occurs anywhere in `host`.
pub fn avoids(host: &Composition, set: &PatternSet) -> bool {
    set.patterns().iter().all(|p| !host.includes(p))
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("pattern parse error at position {position}: {message}")]
pub struct PatternParseError {
    pub position: usize,
    pub message: String,
}

/// Parse the shared pattern text syntax: parts separated by commas,
/// patterns separated by semicolons, whitespace ignored.
///
/// `"3,4,5,4,3"` is one pattern; `"2,3,4;4,3,2"` is a set of two.
pub fn parse_patterns(text: &str) -> Result<Vec<Composition>, PatternParseError> {
    let mut patterns = Vec::new();
    let mut parts: Vec<u32> = Vec::new();
    let mut current: Option<(u64, usize)> = None; // (value, start position)
    let bytes = text.as_bytes();

    let finish_part = |current: &mut Option<(u64, usize)>,
                           parts: &mut Vec<u32>,
                           position: usize|
     -> Result<(), PatternParseError> {
        match current.take() {
            Some((value, start)) => {
                if value == 0 {
                    return Err(PatternParseError {
                        position: start,
                        message: "parts must be positive".into(),
                    });
                }
                if value > u32::MAX as u64 {
                    return Err(PatternParseError {
                        position: start,
                        message: "part too large".into(),
                    });
                }
                parts.push(value as u32);
                Ok(())
            }
            None => Err(PatternParseError {
                position,
                message: "expected a part".into(),
            }),
        }
    };

    for (pos, &b) in bytes.iter().enumerate() {
        match b {
            b'0'..=b'9' => {
                let d = (b - b'0') as u64;
                current = Some(match current {
                    Some((v, start)) => (v.saturating_mul(10).saturating_add(d), start),
                    None => (d, pos),
                });
            }
            b',' => finish_part(&mut current, &mut parts, pos)?,
            b';' => {
                finish_part(&mut current, &mut parts, pos)?;
                patterns.push(Composition { parts: std::mem::take(&mut parts) });
            }
            b if b.is_ascii_whitespace() => {}
            _ => {
                return Err(PatternParseError {
                    position: pos,
                    message: format!("unexpected character {:?}", bytes[pos] as char),
                });
            }
        }
    }
    finish_part(&mut current, &mut parts, text.len())?;
    patterns.push(Composition { parts });
    Ok(patterns)
}

/// Parse and validate into a [`PatternSet`], mapping validation failures to
/// a message anchored at position 0.
pub fn parse_pattern_set(text: &str) -> Result<PatternSet, PatternParseError> {
    let patterns = parse_patterns(text)?;
    PatternSet::new(patterns).map_err(|e| PatternParseError {
        position: 0,
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn set(patterns: &[&[u32]]) -> PatternSet {
        PatternSet::new(patterns.iter().map(|p| comp(p)).collect()).unwrap()
    }

    #[test]
    fn includes_at_offset() {
        let host = comp(&[1, 4, 5, 4, 2, 3, 5, 1]);
        let pat = comp(&[2, 3, 2]);
        assert!(host.includes_at(&pat, 2).unwrap());
        assert!(!host.includes_at(&pat, 1).unwrap());
        assert!(comp(&[2, 2, 2]).includes_at(&comp(&[2, 2]), 1).unwrap());
        assert!(matches!(
            host.includes_at(&pat, 7),
            Err(CompositionError::OffsetOutOfRange { .. })
        ));
    }

    #[test]
    fn includes_examples() {
        assert!(comp(&[2, 2, 2]).includes(&comp(&[1, 2])));
        assert!(!comp(&[4]).includes(&comp(&[1, 2])));
        assert!(!comp(&[3, 1]).includes(&comp(&[1, 2])));
    }

    #[test]
    fn occurrence_vectors() {
        let host = comp(&[1, 4, 5, 4, 2, 3, 5, 1]);
        assert_eq!(occurrences(&host, &set(&[&[2, 3, 2]])).0, vec![3]);
        assert_eq!(
            occurrences(&Composition::empty(), &set(&[&[2, 3, 2]])).0,
            vec![0]
        );
        assert_eq!(
            occurrences(&comp(&[2, 3, 4, 3, 2]), &set(&[&[2, 3, 4], &[4, 3, 2]])).0,
            vec![1, 1]
        );
    }

    #[test]
    fn avoids_examples() {
        assert!(avoids(&comp(&[2, 1, 1]), &set(&[&[1, 2]])));
        assert!(avoids(&comp(&[1, 1, 1, 1]), &set(&[&[1, 2], &[2, 1]])));
        assert!(!avoids(&comp(&[1, 2, 1]), &set(&[&[1, 2]])));
    }

    #[test]
    fn pattern_set_validation() {
        assert!(matches!(
            PatternSet::new(vec![]),
            Err(PatternSetError::Empty)
        ));
        assert!(matches!(
            PatternSet::new(vec![comp(&[1, 2]), comp(&[3])]),
            Err(PatternSetError::MixedLengths { index: 1, .. })
        ));
        assert!(matches!(
            PatternSet::new(vec![comp(&[1, 2]), comp(&[1, 2])]),
            Err(PatternSetError::Duplicate { index: 1 })
        ));
        assert!(matches!(
            PatternSet::new(vec![Composition::empty()]),
            Err(PatternSetError::EmptyPattern { index: 0 })
        ));
    }

    #[test]
    fn parse_syntax() {
        assert_eq!(parse_patterns("3,4,5,4,3").unwrap(), vec![comp(&[3, 4, 5, 4, 3])]);
        assert_eq!(
            parse_patterns(" 2, 3 ,4 ; 4,3,2 ").unwrap(),
            vec![comp(&[2, 3, 4]), comp(&[4, 3, 2])]
        );
        let err = parse_patterns("2,,3").unwrap_err();
        assert_eq!(err.position, 2);
        let err = parse_patterns("2,3,x").unwrap_err();
        assert_eq!(err.position, 4);
        let err = parse_patterns("2,0,3").unwrap_err();
        assert_eq!(err.position, 2);
        assert!(parse_pattern_set("1,2;2,1").is_ok());
        assert!(parse_pattern_set("1,2;2,1,1").is_err());
    }

    #[test]
    fn domination_monotonicity() {
        // includes(h, P) implies includes(h, P') when P' <= P componentwise.
        let strong = comp(&[3, 4]);
        let weak = comp(&[2, 4]);
        for host in crate::oracle::enumerate_compositions(9).unwrap() {
            if host.includes(&strong) {
                assert!(host.includes(&weak), "host {host} breaks monotonicity");
            }
        }
    }
}
