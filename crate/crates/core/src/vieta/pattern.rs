//! Factorization shapes: root multiplicities plus an irreducible cofactor degree.

use std::fmt;

use serde::{Serialize, Serializer};

/// Where roots are sought.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Real roots; the remaining factor must have no real root.
    Real,
    /// Complex roots; every polynomial splits, so there is never a cofactor.
    Complex,
}

/// Order in which the patterns of one cofactor degree are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseOrder {
    /// Fewest distinct roots first: `{3}, {2,1}, {1,1,1}`.
    FewestRootsFirst,
    /// Most distinct roots first: `{1,1,1}, {2,1}, {3}`.
    MostRootsFirst,
}

impl CaseOrder {
    pub fn default_for(mode: Mode) -> CaseOrder {
        match mode {
            Mode::Real => CaseOrder::FewestRootsFirst,
            Mode::Complex => CaseOrder::MostRootsFirst,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplicityPattern {
    mults: Vec<usize>,
    cofactor_degree: usize,
}

impl MultiplicityPattern {
    /// `mults` is sorted into nonincreasing order; zero entries are rejected.
    pub fn new(mut mults: Vec<usize>, cofactor_degree: usize) -> Option<Self> {
        if mults.contains(&0) || (mults.is_empty() && cofactor_degree == 0) {
            return None;
        }
        mults.sort_unstable_by(|a, b| b.cmp(a));
        Some(MultiplicityPattern { mults, cofactor_degree })
    }

    pub fn mults(&self) -> &[usize] {
        &self.mults
    }

    /// Number of distinct roots.
    pub fn k(&self) -> usize {
        self.mults.len()
    }

    pub fn cofactor_degree(&self) -> usize {
        self.cofactor_degree
    }

    pub fn total(&self) -> usize {
        self.mults.iter().sum::<usize>() + self.cofactor_degree
    }

    /// Short label such as `2,1` or `1,1+q2` (cofactor of degree 2) or `q2`.
    pub fn label(&self) -> String {
        let roots = self.mults.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        match (roots.is_empty(), self.cofactor_degree) {
            (_, 0) => roots,
            (true, q) => format!("q{q}"),
            (false, q) => format!("{roots}+q{q}"),
        }
    }
}

impl fmt::Display for MultiplicityPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for MultiplicityPattern {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MultiplicityPattern", 3)?;
        st.serialize_field("label", &self.label())?;
        st.serialize_field("mults", &self.mults)?;
        st.serialize_field("cofactor_degree", &self.cofactor_degree)?;
        st.end()
    }
}

/// Partitions of `s` with parts in nonincreasing order, listed from the
/// fewest parts (`{s}`) down to all ones: reverse lexicographic order.
pub fn partitions(s: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(s, s, &mut Vec::new(), &mut out);
    out
}

/// Every factorization shape of a degree-`d` polynomial, in canonical order.
///
/// The root part `s` runs over `d, d−2, d−3, …, 0` in real mode (a real
/// cofactor of degree 1 would itself be a root) and is `d` alone in complex
/// mode. Within one `s`, partitions go from `{s}` to `{1,…,1}`.
pub fn enumerate_patterns(d: usize, mode: Mode) -> Vec<MultiplicityPattern> {
    assert!(d >= 1, "degree must be at least 1");
    let sizes: Vec<usize> = match mode {
        Mode::Complex => vec![d],
        Mode::Real => std::iter::once(d).chain((0..d.saturating_sub(1)).rev()).collect(),
    };
    sizes
        .into_iter()
        .flat_map(|s| partitions(s).into_iter().map(move |p| MultiplicityPattern::new(p, d - s).unwrap()))
        .collect()
}

/// [`enumerate_patterns`] rearranged for `order`; cofactor degrees stay ascending.
pub fn ordered_patterns(d: usize, mode: Mode, order: CaseOrder) -> Vec<MultiplicityPattern> {
    let mut all = enumerate_patterns(d, mode);
    if order == CaseOrder::MostRootsFirst {
        // Stable reversal within each cofactor degree.
        let mut i = 0;
        while i < all.len() {
            let q = all[i].cofactor_degree;
            let j = i + all[i..].iter().take_while(|p| p.cofactor_degree == q).count();
            all[i..j].reverse();
            i = j;
        }
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(ps: &[MultiplicityPattern]) -> Vec<String> {
        ps.iter().map(MultiplicityPattern::label).collect()
    }

    #[test]
    fn cubic_cases() {
        let real = enumerate_patterns(3, Mode::Real);
        assert_eq!(labels(&real[..3]), ["3", "2,1", "1,1,1"]);
        assert_eq!(labels(&real[3..]), ["1+q2", "q3"]);
        assert_eq!(labels(&enumerate_patterns(3, Mode::Complex)), ["3", "2,1", "1,1,1"]);
        assert_eq!(labels(&ordered_patterns(3, Mode::Complex, CaseOrder::MostRootsFirst)), ["1,1,1", "2,1", "3"]);
    }

    #[test]
    fn degree_five_has_quadratic_cofactor() {
        let ps = enumerate_patterns(5, Mode::Real);
        assert!(ps.iter().any(|p| p.mults() == [1, 1, 1] && p.cofactor_degree() == 2));
        assert!(ps.iter().all(|p| p.cofactor_degree() != 1 && p.total() == 5));
    }

    #[test]
    fn degree_one() {
        assert_eq!(labels(&enumerate_patterns(1, Mode::Real)), ["1"]);
        assert_eq!(labels(&enumerate_patterns(1, Mode::Complex)), ["1"]);
        assert_eq!(labels(&enumerate_patterns(2, Mode::Real)), ["2", "1,1", "q2"]);
    }

    #[test]
    fn validation() {
        assert!(MultiplicityPattern::new(vec![], 0).is_none());
        assert!(MultiplicityPattern::new(vec![1, 0], 0).is_none());
        assert_eq!(MultiplicityPattern::new(vec![1, 2], 0).unwrap().mults(), [2, 1]);
    }
}
