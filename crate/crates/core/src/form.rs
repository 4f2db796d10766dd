//! Homogeneous polynomials in X, Y, Z over GF(2^n).

use std::collections::{BTreeMap, HashMap};

use crate::gf2e::{FieldCtx, FieldElem};
use crate::linalg::Mat3;
use crate::upoly::UPoly;

/// Exponents of X, Y, Z.
pub type Exp = [u32; 3];

/// A form of fixed degree; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    degree: u32,
    terms: BTreeMap<Exp, FieldElem>,
}

/// Iterates the submasks of `k`, largest first; these index the odd binomial
/// coefficients C(k, j) (Lucas).
fn submasks(k: u32) -> impl Iterator<Item = u32> {
    let mut s = Some(k);
    std::iter::from_fn(move || {
        let cur = s?;
        s = if cur == 0 { None } else { Some((cur - 1) & k) };
        Some(cur)
    })
}

fn powers(f: &FieldCtx, x: FieldElem, up_to: u32) -> Vec<FieldElem> {
    let mut out = Vec::with_capacity(up_to as usize + 1);
    let mut acc = FieldElem::ONE;
    for _ in 0..=up_to {
        out.push(acc);
        acc = f.mul(acc, x);
    }
    out
}

#[derive(Clone, Copy)]
enum Elementary {
    Swap(usize, usize),
    Scale(usize, FieldElem),
    /// x_target -> x_target + t x_source
    Transvect { target: usize, source: usize, t: FieldElem },
}

/// Factors M = E_1 E_2 ... E_r into elementary matrices by Gauss-Jordan elimination.
fn elementary_factors(f: &FieldCtx, m: &Mat3) -> Vec<Elementary> {
    let mut a = *m;
    let mut ops = Vec::new();
    for c in 0..3 {
        let p = (c..3)
            .find(|&r| !a[3 * r + c].is_zero())
            .expect("invertible matrix");
        if p != c {
            for j in 0..3 {
                a.swap(3 * p + j, 3 * c + j);
            }
            ops.push(Elementary::Swap(p, c));
        }
        let piv = a[3 * c + c];
        if !piv.is_one() {
            let inv = f.inv(piv).expect("nonzero pivot");
            for j in 0..3 {
                a[3 * c + j] = f.mul(a[3 * c + j], inv);
            }
            ops.push(Elementary::Scale(c, piv));
        }
        for r in 0..3 {
            let t = a[3 * r + c];
            if r != c && !t.is_zero() {
                for j in 0..3 {
                    let v = f.mul(t, a[3 * c + j]);
                    a[3 * r + j] = f.add(a[3 * r + j], v);
                }
                ops.push(Elementary::Transvect {
                    target: r,
                    source: c,
                    t,
                });
            }
        }
    }
    ops
}

impl Form {
    pub fn zero(degree: u32) -> Self {
        Form {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exp: Exp, coef: FieldElem) -> Self {
        let mut out = Form::zero(exp.iter().sum());
        if !coef.is_zero() {
            out.terms.insert(exp, coef);
        }
        out
    }

    /// aX + bY + cZ.
    pub fn linear(coeffs: [FieldElem; 3]) -> Self {
        Self::from_terms(1, [[1, 0, 0], [0, 1, 0], [0, 0, 1]].into_iter().zip(coeffs))
    }

    /// Sums repeated exponents; panics on a non-homogeneous term.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Exp, FieldElem)>) -> Self {
        let mut out = Form::zero(degree);
        for (e, c) in terms {
            assert_eq!(e.iter().sum::<u32>(), degree, "non-homogeneous term {e:?}");
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Exp, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert(FieldElem::ZERO);
        slot.0 ^= c.0;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exp) -> FieldElem {
        self.terms.get(&e).copied().unwrap_or(FieldElem::ZERO)
    }

    /// Terms in descending graded-lex order (X^d first).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Exp, &FieldElem)> {
        self.terms.iter().rev()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &FieldElem)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(Exp, FieldElem)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, *c))
    }

    pub fn add(&self, other: &Form) -> Form {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn scale(&self, f: &FieldCtx, c: FieldElem) -> Form {
        let mut out = Form::zero(self.degree);
        for (&e, &v) in &self.terms {
            out.add_term(e, f.mul(v, c));
        }
        out
    }

    pub fn mul(&self, f: &FieldCtx, other: &Form) -> Form {
        let mut acc: HashMap<Exp, u32> = HashMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                *acc.entry(e).or_insert(0) ^= f.mul(ca, cb).0;
            }
        }
        Form {
            degree: self.degree + other.degree,
            terms: acc
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(e, c)| (e, FieldElem(c)))
                .collect(),
        }
    }

    pub fn pow(&self, f: &FieldCtx, k: u32) -> Form {
        let mut acc = Form::monomial([0, 0, 0], FieldElem::ONE);
        for _ in 0..k {
            acc = acc.mul(f, self);
        }
        acc
    }

    pub fn eval(&self, f: &FieldCtx, p: &[FieldElem; 3]) -> FieldElem {
        let px = powers(f, p[0], self.degree);
        let py = powers(f, p[1], self.degree);
        let pz = powers(f, p[2], self.degree);
        let mut acc = 0u32;
        for (e, &c) in &self.terms {
            let m = f.mul(
                f.mul(px[e[0] as usize], py[e[1] as usize]),
                pz[e[2] as usize],
            );
            acc ^= f.mul(c, m).0;
        }
        FieldElem(acc)
    }

    /// Partial derivative in variable `var` (0 = X, 1 = Y, 2 = Z).
    pub fn partial(&self, var: usize) -> Form {
        let mut out = Form::zero(self.degree.saturating_sub(1));
        for (e, &c) in &self.terms {
            if e[var] % 2 == 1 {
                let mut e2 = *e;
                e2[var] -= 1;
                out.add_term(e2, c);
            }
        }
        out
    }

    pub fn gradient(&self) -> [Form; 3] {
        [self.partial(0), self.partial(1), self.partial(2)]
    }

    /// The form x -> F(M x).
    pub fn substitute(&self, f: &FieldCtx, m: &Mat3) -> Form {
        let d = self.degree as usize;
        let stride = d + 1;
        let mut buf = vec![FieldElem::ZERO; stride * stride];
        for (e, &c) in &self.terms {
            buf[e[0] as usize * stride + e[1] as usize] = c;
        }
        for op in elementary_factors(f, m) {
            buf = apply_elementary(f, &buf, d, op);
        }
        let mut out = Form::zero(self.degree);
        for a in 0..=d {
            for b in 0..=(d - a) {
                let c = buf[a * stride + b];
                if !c.is_zero() {
                    out.terms.insert([a as u32, b as u32, (d - a - b) as u32], c);
                }
            }
        }
        out
    }

    /// Some c with other = c * self, if one exists.
    pub fn proportional(&self, f: &FieldCtx, other: &Form) -> Option<FieldElem> {
        if self.degree != other.degree || self.terms.len() != other.terms.len() {
            return None;
        }
        let (e, c) = self.leading()?;
        let ratio = f.div(other.coeff(e), c).ok()?;
        if ratio.is_zero() {
            return None;
        }
        self.terms
            .iter()
            .all(|(e, &c)| f.mul(c, ratio) == other.coeff(*e))
            .then_some(ratio)
    }

    /// Scaled so the leading graded-lex coefficient is one.
    pub fn normalized(&self, f: &FieldCtx) -> Form {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(f, f.inv(c).expect("nonzero")),
            _ => self.clone(),
        }
    }

    /// g(t) = F(a + t b).
    pub fn restrict(&self, f: &FieldCtx, a: &[FieldElem; 3], b: &[FieldElem; 3]) -> UPoly {
        let d = self.degree;
        let pa: Vec<Vec<FieldElem>> = a.iter().map(|&x| powers(f, x, d)).collect();
        let pb: Vec<Vec<FieldElem>> = b.iter().map(|&x| powers(f, x, d)).collect();
        // (a_i + t b_i)^k = sum over submasks j of k of a_i^(k-j) b_i^j t^j
        let lucas = |i: usize, k: u32| -> Vec<(usize, FieldElem)> {
            submasks(k)
                .map(|j| {
                    (
                        j as usize,
                        f.mul(pa[i][(k - j) as usize], pb[i][j as usize]),
                    )
                })
                .filter(|(_, c)| !c.is_zero())
                .collect()
        };
        let mut out = vec![FieldElem::ZERO; d as usize + 1];
        let mut tmp = vec![0u32; d as usize + 1];
        for (e, &c) in &self.terms {
            let lx = lucas(0, e[0]);
            if lx.is_empty() {
                continue;
            }
            let ly = lucas(1, e[1]);
            if ly.is_empty() {
                continue;
            }
            let lz = lucas(2, e[2]);
            if lz.is_empty() {
                continue;
            }
            let span = (e[0] + e[1]) as usize;
            tmp[..=span].iter_mut().for_each(|x| *x = 0);
            for &(i, ci) in &lx {
                for &(j, cj) in &ly {
                    tmp[i + j] ^= f.mul(ci, cj).0;
                }
            }
            for (i, &ci) in tmp[..=span].iter().enumerate() {
                if ci == 0 {
                    continue;
                }
                let ci = f.mul(FieldElem(ci), c);
                for &(k, ck) in &lz {
                    out[i + k].0 ^= f.mul(ci, ck).0;
                }
            }
        }
        UPoly::new(out)
    }
}

fn apply_elementary(f: &FieldCtx, buf: &[FieldElem], d: usize, op: Elementary) -> Vec<FieldElem> {
    let stride = d + 1;
    let mut out = vec![FieldElem::ZERO; stride * stride];
    let idx = |e: [usize; 3]| e[0] * stride + e[1];
    match op {
        Elementary::Swap(i, j) => {
            for a in 0..=d {
                for b in 0..=(d - a) {
                    let c = buf[a * stride + b];
                    if c.is_zero() {
                        continue;
                    }
                    let mut e = [a, b, d - a - b];
                    e.swap(i, j);
                    out[idx(e)] = c;
                }
            }
        }
        Elementary::Scale(i, s) => {
            let ps = powers(f, s, d as u32);
            for a in 0..=d {
                for b in 0..=(d - a) {
                    let c = buf[a * stride + b];
                    if c.is_zero() {
                        continue;
                    }
                    let e = [a, b, d - a - b];
                    out[a * stride + b] = f.mul(c, ps[e[i]]);
                }
            }
        }
        Elementary::Transvect { target, source, t } => {
            let pt = powers(f, t, d as u32);
            for a in 0..=d {
                for b in 0..=(d - a) {
                    let c = buf[a * stride + b];
                    if c.is_zero() {
                        continue;
                    }
                    let e = [a, b, d - a - b];
                    for k in submasks(e[target] as u32) {
                        let mut e2 = e;
                        e2[target] -= k as usize;
                        e2[source] += k as usize;
                        out[idx(e2)].0 ^= f.mul(c, pt[k as usize]).0;
                    }
                }
            }
        }
    }
    out
}
