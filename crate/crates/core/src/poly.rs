//! Square-free polynomials over `x_1..x_n`, stored as a sparse map from
//! vertex subsets (bitmasks) to nonzero rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{bit, fmt_set, members, VertexSet, WeightedGraph, MAX_VERTICES};
use crate::rational::Q;

pub const MAX_EXPANSION_VARS: usize = 20;

/// `C(n, k)` for `n <= 63`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u128 {
    static TABLE: OnceLock<Vec<Vec<u128>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<u128>> = Vec::with_capacity(MAX_VERTICES + 2);
        for m in 0..=MAX_VERTICES + 1 {
            let mut row = vec![1u128; m + 1];
            for j in 1..m {
                row[j] = rows[m - 1][j - 1] + rows[m - 1][j];
            }
            rows.push(row);
        }
        rows
    });
    if k > n {
        0
    } else {
        table[n][k]
    }
}

pub fn binomial_q(n: usize, k: usize) -> Q {
    Q::from_integer(binomial(n, k).into())
}

/// Subsets of `{1..n}` of size exactly `k`, in ascending mask order.
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    let limit: u128 = 1u128 << n;
    let mut cur: Option<u128> = if k <= n { Some((1u128 << k) - 1) } else { None };
    std::iter::from_fn(move || {
        let c = cur?;
        if c >= limit {
            cur = None;
            return None;
        }
        cur = if c == 0 {
            None
        } else {
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            Some((((ripple ^ c) >> 2) / low) | ripple)
        };
        Some(c as VertexSet)
    })
}

/// All submasks of `set`, starting from `set` and ending with 0.
pub fn submasks(set: VertexSet) -> impl Iterator<Item = VertexSet> {
    let mut cur = Some(set);
    std::iter::from_fn(move || {
        let c = cur?;
        cur = if c == 0 { None } else { Some((c - 1) & set) };
        Some(c)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFreePoly {
    n: usize,
    coeffs: BTreeMap<VertexSet, Q>,
}

impl SquareFreePoly {
    pub fn zero(n: usize) -> Self {
        SquareFreePoly {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Q) -> Self {
        Self::monomial(n, 0, c)
    }

    pub fn monomial(n: usize, set: VertexSet, c: Q) -> Self {
        let mut p = Self::zero(n);
        p.add_term(set, c);
        p
    }

    /// Builds from `(subset, coefficient)` pairs, summing repeats.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (VertexSet, Q)>) -> Result<Self> {
        let mut p = Self::zero(n);
        let universe = universe(n);
        for (s, c) in terms {
            if s & !universe != 0 {
                return Err(Error::InvalidParameter(format!(
                    "monomial {} outside 1..={n}",
                    fmt_set(s)
                )));
            }
            p.add_term(s, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, set: VertexSet, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(set) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, set: VertexSet) -> Q {
        self.coeffs.get(&set).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(0)
    }

    /// Terms in ascending mask order.
    pub fn terms(&self) -> impl Iterator<Item = (VertexSet, &Q)> {
        self.coeffs.iter().map(|(&s, c)| (s, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(|s| s.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn scale(&self, a: &Q) -> Self {
        if a.is_zero() {
            return Self::zero(self.n);
        }
        SquareFreePoly {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(&s, c)| (s, c * a)).collect(),
        }
    }

    fn check_same_n(&self, other: &Self) {
        assert_eq!(self.n, other.n, "polynomials over different variable counts");
    }

    /// Value at the 0/1 point `point` (`point[i-1]` is `x_i`).
    pub fn evaluate(&self, point: &[u8]) -> Result<Q> {
        if point.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "point has length {}, expected {}",
                point.len(),
                self.n
            )));
        }
        let mut set = 0;
        for (i, &v) in point.iter().enumerate() {
            match v {
                0 => {}
                1 => set |= bit(i + 1),
                other => {
                    return Err(Error::InvalidParameter(format!("coordinate {other} is not 0/1")))
                }
            }
        }
        Ok(self.evaluate_set(set))
    }

    /// Value at the indicator vector of `set`.
    pub fn evaluate_set(&self, set: VertexSet) -> Q {
        self.coeffs
            .iter()
            .filter(|(&s, _)| s & !set == 0)
            .map(|(_, c)| c)
            .sum()
    }

    /// Fixes `x_i = value` (the result still lives in `n` variables).
    pub fn restrict(&self, i: usize, value: u8) -> Result<Self> {
        if i == 0 || i > self.n {
            return Err(Error::InvalidVertex { vertex: i, n: self.n });
        }
        let b = bit(i);
        let mut out = Self::zero(self.n);
        for (&s, c) in &self.coeffs {
            match (s & b != 0, value) {
                (false, _) => out.add_term(s, c.clone()),
                (true, 1) => out.add_term(s & !b, c.clone()),
                (true, 0) => {}
                _ => return Err(Error::InvalidParameter(format!("value {value} is not 0/1"))),
            }
        }
        Ok(out)
    }

    /// `p(χ^I)` for every subset `I` of `[n]`, ascending by mask.
    pub fn point_expansion(&self) -> Result<Vec<(VertexSet, Q)>> {
        if self.n > MAX_EXPANSION_VARS {
            return Err(Error::TooLarge(format!(
                "point expansion over {} variables (limit {MAX_EXPANSION_VARS})",
                self.n
            )));
        }
        let size = 1usize << self.n;
        let mut table = vec![Q::zero(); size];
        for (&s, c) in &self.coeffs {
            table[s as usize] = c.clone();
        }
        // subset-sum transform
        for i in 0..self.n {
            let b = 1usize << i;
            for s in 0..size {
                if s & b != 0 {
                    let lower = table[s ^ b].clone();
                    table[s] += lower;
                }
            }
        }
        Ok(table.into_iter().enumerate().map(|(s, v)| (s as VertexSet, v)).collect())
    }

    /// `B_t(p)`: each `p_J` scaled by `C(n - |J|, t - |J|)`.
    pub fn bernstein(&self, t: usize) -> Result<Self> {
        let lo = self.degree();
        if t < lo || t > self.n {
            return Err(Error::OrderOutOfRange { t, lo, hi: self.n });
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&s, c)| {
                let j = s.count_ones() as usize;
                (s, c * binomial_q(self.n - j, t - j))
            })
            .collect();
        Ok(SquareFreePoly { n: self.n, coeffs })
    }
}

pub fn universe(n: usize) -> VertexSet {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

/// `x^I (1 - x)^{T \ I}` expanded as `Σ_{J ⊆ T\I} (-1)^{|J|} x^{I ∪ J}`.
pub fn expand_basis_term(n: usize, t_set: VertexSet, i_set: VertexSet) -> Result<SquareFreePoly> {
    if i_set & !t_set != 0 {
        return Err(Error::InvalidParameter(format!(
            "{} is not a subset of {}",
            fmt_set(i_set),
            fmt_set(t_set)
        )));
    }
    if t_set & !universe(n) != 0 {
        return Err(Error::InvalidParameter(format!("{} outside 1..={n}", fmt_set(t_set))));
    }
    let free = t_set & !i_set;
    let coeffs = submasks(free)
        .map(|j| {
            let sign = if j.count_ones() % 2 == 0 { Q::one() } else { -Q::one() };
            (i_set | j, sign)
        })
        .collect();
    Ok(SquareFreePoly { n, coeffs })
}

/// `p_{G,w} = Σ w_i x_i - Σ w_ij x_i x_j`.
pub fn stable_set_poly(g: &WeightedGraph) -> SquareFreePoly {
    let mut p = SquareFreePoly::zero(g.n());
    for v in 1..=g.n() {
        p.add_term(bit(v), g.weight(v).clone());
    }
    for (&(i, j), w) in g.edge_weights() {
        p.add_term(bit(i) | bit(j), -w.clone());
    }
    p
}

/// `f_{G,w} = α - p_{G,w}`.
pub fn target_poly(g: &WeightedGraph, alpha: &Q) -> SquareFreePoly {
    &SquareFreePoly::constant(g.n(), alpha.clone()) - &stable_set_poly(g)
}

impl Add for &SquareFreePoly {
    type Output = SquareFreePoly;

    fn add(self, rhs: &SquareFreePoly) -> SquareFreePoly {
        self.check_same_n(rhs);
        let mut out = self.clone();
        for (&s, c) in &rhs.coeffs {
            out.add_term(s, c.clone());
        }
        out
    }
}

impl Sub for &SquareFreePoly {
    type Output = SquareFreePoly;

    fn sub(self, rhs: &SquareFreePoly) -> SquareFreePoly {
        self + &(-rhs)
    }
}

impl Neg for &SquareFreePoly {
    type Output = SquareFreePoly;

    fn neg(self) -> SquareFreePoly {
        self.scale(&-Q::one())
    }
}

/// Product reduced modulo `x_i^2 = x_i`.
impl Mul for &SquareFreePoly {
    type Output = SquareFreePoly;

    fn mul(self, rhs: &SquareFreePoly) -> SquareFreePoly {
        self.check_same_n(rhs);
        let mut out = SquareFreePoly::zero(self.n);
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &rhs.coeffs {
                out.add_term(a | b, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for SquareFreePoly {
    /// `c * x{1,3} + ...`, constants printed bare.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<_> = self.coeffs.iter().collect();
        ordered.sort_by_key(|(&s, _)| (s.count_ones(), members(s).collect::<Vec<_>>()));
        for (k, (&s, c)) in ordered.into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if s == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c} * x{}", fmt_set(s))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circuit, complete, set_of, Graph, WeightedGraph};
    use crate::rational::{q, qf};
    use proptest::prelude::*;

    fn poly(n: usize, terms: &[(&[usize], i64)]) -> SquareFreePoly {
        SquareFreePoly::from_terms(n, terms.iter().map(|(s, c)| (set_of(s), q(*c)))).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(63, 31), 916312070471295267);
        assert_eq!(subsets_of_size(4, 2).count(), 6);
        assert_eq!(subsets_of_size(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(2, 3).count(), 0);
        assert_eq!(subsets_of_size(63, 63).count(), 1);
        assert_eq!(submasks(0b101).collect::<Vec<_>>(), vec![0b101, 0b100, 0b001, 0]);
    }

    #[test]
    fn stable_set_polynomials() {
        let k2 = WeightedGraph::unit(complete(2).unwrap());
        assert_eq!(stable_set_poly(&k2), poly(2, &[(&[1], 1), (&[2], 1), (&[1, 2], -1)]));

        let c5 = WeightedGraph::unit(circuit(5).unwrap());
        let mut terms: Vec<(Vec<usize>, i64)> = (1..=5).map(|i| (vec![i], 1)).collect();
        terms.extend([[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]].map(|e| (e.to_vec(), -1)));
        let expected = SquareFreePoly::from_terms(5, terms.iter().map(|(s, c)| (set_of(s), q(*c)))).unwrap();
        assert_eq!(stable_set_poly(&c5), expected);

        let edgeless = WeightedGraph::derived(Graph::empty(3).unwrap(), vec![q(1), q(2), q(3)], Default::default()).unwrap();
        assert_eq!(stable_set_poly(&edgeless), poly(3, &[(&[1], 1), (&[2], 2), (&[3], 3)]));
    }

    #[test]
    fn target_polynomials() {
        let k3 = WeightedGraph::unit(complete(3).unwrap());
        let f = target_poly(&k3, &q(1));
        assert_eq!(
            f,
            poly(3, &[(&[], 1), (&[1], -1), (&[2], -1), (&[3], -1), (&[1, 2], 1), (&[1, 3], 1), (&[2, 3], 1)])
        );
        let edgeless = WeightedGraph::derived(Graph::empty(2).unwrap(), vec![q(2), q(3)], Default::default()).unwrap();
        let f = target_poly(&edgeless, &q(5));
        let expected = &poly(2, &[(&[], 2), (&[1], -2)]) + &poly(2, &[(&[], 3), (&[2], -3)]);
        assert_eq!(f, expected);
        let c5 = WeightedGraph::unit(circuit(5).unwrap());
        let f = target_poly(&c5, &q(2));
        assert_eq!(f.constant_term(), q(2));
        assert_eq!(f.coeff(set_of(&[1, 5])), q(1));
        assert_eq!(f.coeff(set_of(&[1, 3])), q(0));
    }

    #[test]
    fn evaluation() {
        let c5 = stable_set_poly(&WeightedGraph::unit(circuit(5).unwrap()));
        assert_eq!(c5.evaluate(&[1, 0, 1, 0, 0]).unwrap(), q(2));
        assert_eq!(c5.evaluate(&[0; 5]).unwrap(), q(0));
        assert!(c5.evaluate(&[0; 4]).is_err());
        let f = target_poly(&WeightedGraph::unit(complete(3).unwrap()), &q(1));
        assert_eq!(f.evaluate(&[1, 1, 0]).unwrap(), q(0));
    }

    #[test]
    fn restriction() {
        let p = poly(2, &[(&[1, 2], 1)]);
        assert_eq!(p.restrict(2, 1).unwrap(), poly(2, &[(&[1], 1)]));
        assert!(p.restrict(2, 0).unwrap().is_zero());
        assert!(p.restrict(3, 0).is_err());
    }

    #[test]
    fn point_expansions() {
        let one = SquareFreePoly::constant(3, q(1));
        assert!(one.point_expansion().unwrap().iter().all(|(_, v)| *v == q(1)));
        let f = target_poly(&WeightedGraph::unit(complete(3).unwrap()), &q(1));
        for (s, v) in f.point_expansion().unwrap() {
            let expected = if s == 0 || s == 0b111 { q(1) } else { q(0) };
            assert_eq!(v, expected, "at {}", fmt_set(s));
        }
        let x1 = poly(1, &[(&[1], 1)]);
        assert_eq!(x1.point_expansion().unwrap(), vec![(0, q(0)), (1, q(1))]);
        assert!(SquareFreePoly::zero(21).point_expansion().is_err());
    }

    #[test]
    fn bernstein_operator() {
        let p = poly(3, &[(&[1, 2], 1)]);
        assert_eq!(p.bernstein(2).unwrap(), p);
        assert_eq!(p.bernstein(3).unwrap(), p);
        assert_eq!(SquareFreePoly::constant(5, q(1)).bernstein(2).unwrap(), SquareFreePoly::constant(5, q(10)));
        assert_eq!(poly(3, &[(&[1], 1)]).bernstein(2).unwrap(), poly(3, &[(&[1], 2)]));
        assert!(p.bernstein(1).is_err());
        assert!(p.bernstein(4).is_err());
    }

    #[test]
    fn basis_term_expansion() {
        assert_eq!(
            expand_basis_term(2, 0b11, 0).unwrap(),
            poly(2, &[(&[], 1), (&[1], -1), (&[2], -1), (&[1, 2], 1)])
        );
        assert_eq!(expand_basis_term(3, 0b101, 0b101).unwrap(), poly(3, &[(&[1, 3], 1)]));
        assert_eq!(
            expand_basis_term(3, 0b111, 0b001).unwrap(),
            poly(3, &[(&[1], 1), (&[1, 2], -1), (&[1, 3], -1), (&[1, 2, 3], 1)])
        );
        assert!(expand_basis_term(3, 0b011, 0b100).is_err());
    }

    #[test]
    fn display_form() {
        let p = &poly(3, &[(&[1, 3], 2), (&[], 1)]) + &SquareFreePoly::monomial(3, 0b10, qf(-1, 2));
        assert_eq!(p.to_string(), "1 + -1/2 * x{2} + 2 * x{1,3}");
        assert_eq!(SquareFreePoly::zero(2).to_string(), "0");
    }

    fn arb_poly_n(n: usize) -> impl Strategy<Value = SquareFreePoly> {
        proptest::collection::vec((0..(1u64 << n), -6i64..=6, 1i64..=3), 0..12)
            .prop_map(move |terms| SquareFreePoly::from_terms(n, terms.into_iter().map(|(s, a, b)| (s, qf(a, b)))).unwrap())
    }

    fn arb_poly(max_n: usize) -> impl Strategy<Value = SquareFreePoly> {
        (1..=max_n).prop_flat_map(arb_poly_n)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn partition_of_unity(n in 1usize..7, seed in any::<u64>()) {
            let t_set = seed & universe(n);
            let mut total = SquareFreePoly::zero(n);
            for i_set in submasks(t_set) {
                total = &total + &expand_basis_term(n, t_set, i_set).unwrap();
            }
            prop_assert_eq!(total, SquareFreePoly::constant(n, q(1)));
        }

        #[test]
        fn restriction_identity(p in arb_poly(7)) {
            for i in 1..=p.n() {
                let xi = SquareFreePoly::monomial(p.n(), bit(i), q(1));
                let one_minus = &SquareFreePoly::constant(p.n(), q(1)) - &xi;
                let back = &(&one_minus * &p.restrict(i, 0).unwrap()) + &(&xi * &p.restrict(i, 1).unwrap());
                prop_assert_eq!(&back, &p);
            }
        }

        #[test]
        fn point_expansion_round_trip(p in arb_poly(8)) {
            let full = universe(p.n());
            let mut back = SquareFreePoly::zero(p.n());
            for (i_set, v) in p.point_expansion().unwrap() {
                back = &back + &expand_basis_term(p.n(), full, i_set).unwrap().scale(&v);
            }
            prop_assert_eq!(back, p);
        }

        #[test]
        fn bernstein_is_linear((p, r) in (1usize..=6).prop_flat_map(|n| (arb_poly_n(n), arb_poly_n(n))), a in -5i64..5, b in -5i64..5) {
            let t = p.degree().max(r.degree());
            let lhs = (&p.scale(&q(a)) + &r.scale(&q(b))).bernstein(t).unwrap();
            let rhs = &p.bernstein(t).unwrap().scale(&q(a)) + &r.bernstein(t).unwrap().scale(&q(b));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
