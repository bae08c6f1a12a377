//! Closed-form index and defect formulas for flag stabilizers and for
//! parabolic subalgebras of `so(q)`, and the Dynkin-subset classifiers of
//! quasi-reductive standard parabolics in types B and D.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Dimensions `d_1 < ... < d_t` of the nonzero steps of a flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagProfile {
    dims: Vec<usize>,
}

impl FlagProfile {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.first() == Some(&0) {
            return Err(Error::Domain("flag dimensions must be positive".into()));
        }
        if dims.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(format!("flag dimensions {dims:?} not strictly increasing")));
        }
        Ok(FlagProfile { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Dimension of the largest step, 0 for the empty flag.
    pub fn top(&self) -> usize {
        self.dims.last().copied().unwrap_or(0)
    }

    /// Dimension of the step below the top, 0 when there is none.
    pub fn below_top(&self) -> usize {
        self.dims.len().checked_sub(2).map_or(0, |i| self.dims[i])
    }

    pub fn without_top(&self) -> FlagProfile {
        FlagProfile {
            dims: self.dims[..self.dims.len().saturating_sub(1)].to_vec(),
        }
    }

    /// All strictly increasing sequences ending at `top`.
    pub fn all_ending_at(top: usize) -> Vec<FlagProfile> {
        if top == 0 {
            return vec![];
        }
        (0u64..1 << (top - 1))
            .map(|mask| {
                let mut dims: Vec<usize> = (1..top).filter(|d| mask >> (d - 1) & 1 == 1).collect();
                dims.push(top);
                FlagProfile { dims }
            })
            .collect()
    }
}

impl fmt::Display for FlagProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.dims.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Number of consecutive steps whose dimensions are both odd.
pub fn h_flag(p: &FlagProfile) -> usize {
    p.dims.windows(2).filter(|w| w[0] % 2 == 1 && w[1] % 2 == 1).count()
}

/// No two consecutive steps of odd dimension.
pub fn satisfies_p(p: &FlagProfile) -> bool {
    h_flag(p) == 0
}

/// `sum_i floor((d_i - d_{i-1}) / 2)` with `d_0 = 0`.
pub fn half_step_sum(p: &FlagProfile) -> usize {
    let mut prev = 0;
    let mut s = 0;
    for &d in &p.dims {
        s += (d - prev) / 2;
        prev = d;
    }
    s
}

/// Which flag the defect is read from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeRule {
    /// Stabilizer of a flag in `V` with a maximal-rank alternating form:
    /// the top step is dropped when `dim V` is odd.
    Alternating,
    /// Parabolic of `so(q)`: the top step is dropped when it is odd and
    /// equal to `q/2`.
    Orthogonal { q: usize },
}

/// The reduced flag whose odd pairs count the defect.
pub fn flag_prime(p: &FlagProfile, rule: PrimeRule) -> FlagProfile {
    let r = p.top();
    let drop = match rule {
        PrimeRule::Alternating => r % 2 == 1,
        PrimeRule::Orthogonal { q } => r % 2 == 1 && 2 * r == q,
    };
    if drop {
        p.without_top()
    } else {
        p.clone()
    }
}

fn require_nonempty(p: &FlagProfile) -> Result<()> {
    if p.is_empty() {
        return Err(Error::Domain("flag must end at a nonzero space".into()));
    }
    Ok(())
}

/// Index of the stabilizer of a generic flag of `V = V_t` in the
/// stabilizer of a maximal-rank alternating form.
pub fn index_r_formula(p: &FlagProfile) -> Result<usize> {
    require_nonempty(p)?;
    let s = half_step_sum(p);
    let dim_v = p.top();
    Ok(if dim_v % 2 == 0 {
        s
    } else if p.below_top() + 1 < dim_v {
        s - 1
    } else {
        s + 1
    })
}

pub fn defect_r_formula(p: &FlagProfile) -> Result<usize> {
    require_nonempty(p)?;
    Ok(h_flag(&flag_prime(p, PrimeRule::Alternating)))
}

pub fn qr_r_formula(p: &FlagProfile) -> Result<bool> {
    Ok(defect_r_formula(p)? == 0)
}

fn check_orthogonal(q: usize, p: &FlagProfile) -> Result<()> {
    if q < 3 {
        return Err(Error::Domain(format!("so({q}) needs q >= 3")));
    }
    if p.top() > q / 2 {
        return Err(Error::Domain(format!(
            "isotropic flag {p} cannot exceed dimension {} in so({q})",
            q / 2
        )));
    }
    Ok(())
}

/// Index of the parabolic subalgebra of `so(q)` stabilizing an isotropic
/// flag with the given profile. The empty flag gives `so(q)` itself.
pub fn index_p_formula(q: usize, p: &FlagProfile) -> Result<usize> {
    check_orthogonal(q, p)?;
    let r = p.top();
    let s = half_step_sum(p);
    Ok(if r % 2 == 0 {
        q / 2 + s - r
    } else if 2 * r < q {
        (q - 1) / 2 + s - r
    } else if p.below_top() + 1 < r {
        s - 1
    } else {
        s + 1
    })
}

pub fn defect_p_formula(q: usize, p: &FlagProfile) -> Result<usize> {
    check_orthogonal(q, p)?;
    Ok(h_flag(&flag_prime(p, PrimeRule::Orthogonal { q })))
}

pub fn qr_p_formula(q: usize, p: &FlagProfile) -> Result<bool> {
    Ok(defect_p_formula(q, p)? == 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    B,
    D,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Series::B => "B",
            Series::D => "D",
        })
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "B" | "b" => Ok(Series::B),
            "D" | "d" => Ok(Series::D),
            other => Err(Error::Parse(format!("unknown series {other:?}; use B or D"))),
        }
    }
}

/// A set of simple roots of `B_n` or `D_n`. Roots in the set are the ones
/// outside the Levi factor, so the set indexes the standard parabolic
/// stabilizing the flag of the corresponding `F_i`.
///
/// For `D_n` the numeric part lies in `1..=n-2` and the two branch roots
/// are the symbols `n+` and `n-`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSubset {
    pub series: Series,
    pub n: usize,
    pub numeric: BTreeSet<usize>,
    pub plus: bool,
    pub minus: bool,
}

impl RootSubset {
    pub fn new(series: Series, n: usize, numeric: BTreeSet<usize>, plus: bool, minus: bool) -> Result<Self> {
        match series {
            Series::B => {
                if n < 2 {
                    return Err(Error::Domain(format!("B_{n} needs n >= 2")));
                }
                if plus || minus {
                    return Err(Error::Domain("type B has no branch roots".into()));
                }
                if let Some(&bad) = numeric.iter().find(|&&i| i == 0 || i > n) {
                    return Err(Error::Domain(format!("root {bad} outside 1..={n}")));
                }
            }
            Series::D => {
                if n < 4 {
                    return Err(Error::Domain(format!("D_{n} needs n >= 4")));
                }
                if numeric.contains(&(n - 1)) || numeric.contains(&n) {
                    return Err(Error::Domain(format!(
                        "numeric roots of D_{n} lie in 1..={}; F_{} is stabilized by {{{n}+, {n}-}} \
                         and F_{n} is written {n}+ or {n}-",
                        n - 2,
                        n - 1
                    )));
                }
                if let Some(&bad) = numeric.iter().find(|&&i| i == 0 || i > n) {
                    return Err(Error::Domain(format!("root {bad} outside 1..={}", n - 2)));
                }
            }
        }
        Ok(RootSubset {
            series,
            n,
            numeric,
            plus,
            minus,
        })
    }

    /// Parses `"1,3"`, `"1,4+,4-"`, `"1,5-"` or `""`.
    pub fn parse(series: Series, n: usize, s: &str) -> Result<Self> {
        let mut numeric = BTreeSet::new();
        let (mut plus, mut minus) = (false, false);
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (num, sign) = match tok.strip_suffix('+') {
                Some(rest) => (rest, Some(true)),
                None => match tok.strip_suffix('-') {
                    Some(rest) => (rest, Some(false)),
                    None => (tok, None),
                },
            };
            let k: usize = num
                .parse()
                .map_err(|_| Error::Parse(format!("bad root token {tok:?}")))?;
            match sign {
                None => {
                    numeric.insert(k);
                }
                Some(sign) => {
                    if series != Series::D || k != n {
                        return Err(Error::Parse(format!(
                            "signed root {tok:?} only exists as {n}+ / {n}- in type D"
                        )));
                    }
                    if sign {
                        plus = true;
                    } else {
                        minus = true;
                    }
                }
            }
        }
        Self::new(series, n, numeric, plus, minus)
    }

    /// Every valid subset, in a fixed order (bitmask order over the nodes).
    pub fn all(series: Series, n: usize) -> Vec<RootSubset> {
        let nodes = match series {
            Series::B => n,
            Series::D => n,
        };
        (0u64..1 << nodes)
            .map(|mask| {
                let bit = |i: usize| mask >> i & 1 == 1;
                match series {
                    Series::B => RootSubset {
                        series,
                        n,
                        numeric: (1..=n).filter(|&i| bit(i - 1)).collect(),
                        plus: false,
                        minus: false,
                    },
                    Series::D => RootSubset {
                        series,
                        n,
                        numeric: (1..=n - 2).filter(|&i| bit(i - 1)).collect(),
                        plus: bit(n - 2),
                        minus: bit(n - 1),
                    },
                }
            })
            .collect()
    }

    /// Dimension of the ambient orthogonal space.
    pub fn q(&self) -> usize {
        match self.series {
            Series::B => 2 * self.n + 1,
            Series::D => 2 * self.n,
        }
    }

    /// The subset with `n+` and `n-` exchanged.
    pub fn swapped(&self) -> RootSubset {
        RootSubset {
            plus: self.minus,
            minus: self.plus,
            ..self.clone()
        }
    }

    /// Whether this is the full set of simple roots (a Borel subalgebra).
    pub fn is_full(&self) -> bool {
        match self.series {
            Series::B => self.numeric.len() == self.n,
            Series::D => self.numeric.len() == self.n - 2 && self.plus && self.minus,
        }
    }

    /// Isotropic dimensions of the flag stabilized by the parabolic.
    pub fn flag_profile(&self) -> FlagProfile {
        let t = tilde(self);
        let mut dims: Vec<usize> = t.numeric.iter().copied().collect();
        if t.plus || t.minus {
            dims.push(self.n);
        }
        FlagProfile { dims }
    }
}

impl fmt::Display for RootSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.numeric.iter().map(ToString::to_string).collect();
        if self.plus {
            parts.push(format!("{}+", self.n));
        }
        if self.minus {
            parts.push(format!("{}-", self.n));
        }
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The flag index set: numeric part in `1..=n-1` plus at most one of the
/// symbols `n+`, `n-`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeSet {
    pub numeric: BTreeSet<usize>,
    pub plus: bool,
    pub minus: bool,
}

/// For type D, both branch roots together become `n-1`; otherwise (and for
/// type B) the set is unchanged.
pub fn tilde(i: &RootSubset) -> TildeSet {
    if i.series == Series::D && i.plus && i.minus {
        let mut numeric = i.numeric.clone();
        numeric.insert(i.n - 1);
        TildeSet {
            numeric,
            plus: false,
            minus: false,
        }
    } else {
        TildeSet {
            numeric: i.numeric.clone(),
            plus: i.plus,
            minus: i.minus,
        }
    }
}

/// Numeric part of [`tilde`], the integers the type-D classifier works on.
pub fn i_zero(i: &RootSubset) -> BTreeSet<usize> {
    tilde(i).numeric
}

/// Two odd integers of the set with no element of the set between them.
fn has_adjacent_odd_pair(set: &BTreeSet<usize>) -> bool {
    let v: Vec<usize> = set.iter().copied().collect();
    for (a, &j) in v.iter().enumerate() {
        for &k in &v[a + 1..] {
            if j % 2 == 1 && k % 2 == 1 && !set.iter().any(|&p| j < p && p < k) {
                return true;
            }
        }
    }
    false
}

pub fn qr_roots_b(i: &RootSubset) -> Result<bool> {
    if i.series != Series::B || i.n < 3 {
        return Err(Error::Domain("classifier needs type B with n >= 3".into()));
    }
    Ok(!has_adjacent_odd_pair(&i.numeric))
}

pub fn qr_roots_d(i: &RootSubset) -> Result<bool> {
    if i.series != Series::D {
        return Err(Error::Domain("classifier needs type D".into()));
    }
    Ok(!has_adjacent_odd_pair(&i_zero(i)))
}

pub fn qr_roots(i: &RootSubset) -> Result<bool> {
    match i.series {
        Series::B => qr_roots_b(i),
        Series::D => qr_roots_d(i),
    }
}

/// A node of the Dynkin diagram of `B_n` or `D_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Node {
    Numeric(usize),
    Plus,
    Minus,
}

fn nodes_and_edges(series: Series, n: usize) -> (Vec<Node>, Vec<(Node, Node)>) {
    match series {
        Series::B => {
            let nodes = (1..=n).map(Node::Numeric).collect();
            let edges = (1..n).map(|i| (Node::Numeric(i), Node::Numeric(i + 1))).collect();
            (nodes, edges)
        }
        Series::D => {
            let mut nodes: Vec<Node> = (1..=n - 2).map(Node::Numeric).collect();
            nodes.push(Node::Plus);
            nodes.push(Node::Minus);
            let mut edges: Vec<(Node, Node)> =
                (1..n - 2).map(|i| (Node::Numeric(i), Node::Numeric(i + 1))).collect();
            edges.push((Node::Numeric(n - 2), Node::Plus));
            edges.push((Node::Numeric(n - 2), Node::Minus));
            (nodes, edges)
        }
    }
}

/// Counts the connected components of the Levi roots (the complement of
/// the subset) that are numeric intervals `[i, j]` with `i`, `j` even and
/// `2 <= j <= n-1` (type B) or `2 <= j <= n-2` (type D). Components that
/// reach a branch node are not intervals and never count.
pub fn h_from_root_complement(i: &RootSubset) -> usize {
    let (nodes, edges) = nodes_and_edges(i.series, i.n);
    let in_set = |v: &Node| match v {
        Node::Numeric(k) => i.numeric.contains(k),
        Node::Plus => i.plus,
        Node::Minus => i.minus,
    };
    let levi: Vec<Node> = nodes.iter().copied().filter(|v| !in_set(v)).collect();
    let mut seen = BTreeSet::new();
    let mut count = 0;
    let j_max = match i.series {
        Series::B => i.n - 1,
        Series::D => i.n - 2,
    };
    for start in &levi {
        if !seen.insert(*start) {
            continue;
        }
        let mut comp = vec![*start];
        let mut stack = vec![*start];
        while let Some(v) = stack.pop() {
            for &(a, b) in &edges {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !in_set(&w) && seen.insert(w) {
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        let numeric: Option<Vec<usize>> = comp
            .iter()
            .map(|v| match v {
                Node::Numeric(k) => Some(*k),
                _ => None,
            })
            .collect();
        let Some(mut ks) = numeric else { continue };
        ks.sort_unstable();
        let (lo, hi) = (ks[0], *ks.last().unwrap());
        if lo % 2 == 0 && hi % 2 == 0 && (2..=j_max).contains(&hi) {
            count += 1;
        }
    }
    count
}

/// ASCII Dynkin diagram: `*` for roots in the subset, `o` for Levi roots.
pub fn render_dynkin(i: &RootSubset) -> String {
    let mark = |b: bool| if b { '*' } else { 'o' };
    match i.series {
        Series::B => {
            let mut top = String::new();
            let mut labels = String::new();
            for k in 1..=i.n {
                if k > 1 {
                    top.push_str(if k == i.n { "=>=" } else { "---" });
                    labels.push_str("   ");
                }
                top.push(mark(i.numeric.contains(&k)));
                labels.push_str(&format!("{k:<1}"));
                if k >= 10 {
                    labels.pop();
                }
            }
            format!("{top}\n{labels}")
        }
        Series::D => {
            let mut chain = String::new();
            for k in 1..=i.n - 2 {
                if k > 1 {
                    chain.push_str("---");
                }
                chain.push(mark(i.numeric.contains(&k)));
            }
            let pad = " ".repeat(chain.len());
            format!(
                "{pad}  {} {}+\n{chain}-<\n{pad}  {} {}-\n{}",
                mark(i.plus),
                i.n,
                mark(i.minus),
                i.n,
                (1..=i.n - 2).map(|k| format!("{k:<4}")).collect::<String>().trim_end()
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(d: &[usize]) -> FlagProfile {
        FlagProfile::new(d.to_vec()).unwrap()
    }

    fn b(n: usize, s: &str) -> RootSubset {
        RootSubset::parse(Series::B, n, s).unwrap()
    }

    fn d(n: usize, s: &str) -> RootSubset {
        RootSubset::parse(Series::D, n, s).unwrap()
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_flag(&fp(&[1, 3, 5])), 2);
        assert_eq!(h_flag(&fp(&[2, 4, 6])), 0);
        assert_eq!(h_flag(&fp(&[1, 2, 3])), 0);
        assert!(satisfies_p(&fp(&[1, 2, 3])));
        assert!(FlagProfile::new(vec![2, 2]).is_err());
        assert!(FlagProfile::new(vec![0, 2]).is_err());
    }

    #[test]
    fn r_formula_examples() {
        assert_eq!(index_r_formula(&fp(&[1, 4])).unwrap(), 1);
        assert_eq!(defect_r_formula(&fp(&[1, 4])).unwrap(), 0);
        assert_eq!(index_r_formula(&fp(&[1, 3, 4])).unwrap(), 1);
        assert_eq!(defect_r_formula(&fp(&[1, 3, 4])).unwrap(), 1);
        assert_eq!(index_r_formula(&fp(&[3])).unwrap(), 0);
        assert_eq!(index_r_formula(&fp(&[1])).unwrap(), 1);
        assert!(index_r_formula(&fp(&[])).is_err());
    }

    #[test]
    fn p_formula_examples() {
        assert_eq!(index_p_formula(8, &fp(&[1, 3])).unwrap(), 1);
        assert_eq!(defect_p_formula(8, &fp(&[1, 3])).unwrap(), 1);
        assert!(!qr_p_formula(8, &fp(&[1, 3])).unwrap());

        assert_eq!(index_p_formula(7, &fp(&[1, 2, 3])).unwrap(), 0);
        assert_eq!(defect_p_formula(7, &fp(&[1, 2, 3])).unwrap(), 0);

        assert_eq!(index_p_formula(10, &fp(&[1, 5])).unwrap(), 1);
        assert_eq!(defect_p_formula(10, &fp(&[1, 5])).unwrap(), 0);
        assert!(qr_p_formula(10, &fp(&[1, 5])).unwrap());

        assert_eq!(index_p_formula(9, &fp(&[])).unwrap(), 4);
        assert!(index_p_formula(7, &fp(&[4])).is_err());
    }

    #[test]
    fn classifier_b_examples() {
        assert!(!qr_roots_b(&b(3, "1,3")).unwrap());
        assert!(qr_roots_b(&b(4, "1,2,3")).unwrap());
        assert!(qr_roots_b(&b(4, "2,4")).unwrap());
    }

    #[test]
    fn classifier_d_examples() {
        let i = d(4, "1,4+,4-");
        assert_eq!(i_zero(&i), BTreeSet::from([1, 3]));
        assert!(!qr_roots_d(&i).unwrap());

        let i = d(5, "1,5-");
        assert_eq!(i_zero(&i), BTreeSet::from([1]));
        assert!(qr_roots_d(&i).unwrap());
        assert_eq!(i.flag_profile(), fp(&[1, 5]));

        assert!(qr_roots_d(&d(4, "")).unwrap());
    }

    #[test]
    fn root_complement_examples() {
        assert_eq!(h_from_root_complement(&b(3, "1,3")), 1);
        assert_eq!(h_from_root_complement(&b(3, "1,2,3")), 0);
        assert_eq!(h_from_root_complement(&d(4, "1,4+,4-")), 1);
    }

    #[test]
    fn parse_errors() {
        assert!(RootSubset::parse(Series::D, 5, "4").is_err());
        assert!(RootSubset::parse(Series::D, 5, "5").is_err());
        assert!(RootSubset::parse(Series::B, 3, "3+").is_err());
        assert!(RootSubset::parse(Series::B, 3, "4").is_err());
        assert!(RootSubset::parse(Series::B, 3, "x").is_err());
        assert!(RootSubset::parse(Series::D, 5, "1,5-").is_ok());
    }

    #[test]
    fn subset_counts() {
        assert_eq!(RootSubset::all(Series::B, 3).len(), 8);
        assert_eq!(RootSubset::all(Series::D, 4).len(), 16);
        let all: BTreeSet<_> = RootSubset::all(Series::D, 5).into_iter().collect();
        assert_eq!(all.len(), 32);
    }

    #[test]
    fn dynkin_rendering() {
        let s = render_dynkin(&b(3, "1,3"));
        assert!(s.starts_with("*---o=>=*"), "{s}");
        let s = render_dynkin(&d(5, "1,5-"));
        assert_eq!(s.matches('*').count(), 2);
        assert_eq!(s.matches('o').count(), 3);
    }
}
