//! The coordinate superalgebra in its Peter-Weyl basis: elements are
//! finite combinations of matrix coefficients t^{(lambda)}_{ij} of the
//! registry irreducibles. Product, coproduct, antipode, Haar
//! functional, the circ/dot translation actions, superdimension and
//! the orthogonality relations all live here.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::error::KernelError;
use crate::repcore::{dual_data, irreducible, tensor_decomp, Module};
use crate::scalars::RatFunc;
use crate::uqalg::{antipode_inv_word, k2rho_word, Word};

/// Basis label t^{(lambda)}_{row, col}, indices 0-based into the
/// registry copy of W(lambda).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PWIndex {
    pub lambda: Vec<i64>,
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PWElement {
    pub terms: BTreeMap<PWIndex, RatFunc>,
}

impl PWElement {
    pub fn zero() -> Self {
        PWElement { terms: BTreeMap::new() }
    }

    /// The unit t^{(0)}_{00} = epsilon.
    pub fn one(n: usize) -> Self {
        Self::basis(vec![0; n], 0, 0)
    }

    pub fn basis(lambda: Vec<i64>, row: usize, col: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(PWIndex { lambda, row, col }, RatFunc::one());
        PWElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, idx: PWIndex, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(idx).or_insert_with(RatFunc::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &PWElement) -> PWElement {
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &PWElement) -> PWElement {
        let minus = other.scaled(&(&RatFunc::zero() - &RatFunc::one()));
        self.add(&minus)
    }

    pub fn scaled(&self, c: &RatFunc) -> PWElement {
        if c.is_zero() {
            return PWElement::zero();
        }
        PWElement {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Coefficient of the trivial block, i.e. the Haar integral.
    pub fn unit_coefficient(&self, n: usize) -> RatFunc {
        self.terms
            .get(&PWIndex { lambda: vec![0; n], row: 0, col: 0 })
            .cloned()
            .unwrap_or_else(RatFunc::zero)
    }

    /// Homogeneous parity if the element has one (zero element counts
    /// as either; returns 0 then).
    pub fn parity(&self, ctx: &Context) -> Result<u8, KernelError> {
        let mut p: Option<u8> = None;
        for idx in self.terms.keys() {
            let ip = index_parity(ctx, idx)?;
            match p {
                None => p = Some(ip),
                Some(q) if q != ip => {
                    return Err(KernelError::Invalid(
                        "element is not parity-homogeneous".into(),
                    ))
                }
                _ => {}
            }
        }
        Ok(p.unwrap_or(0))
    }
}

/// Parity of t^{(lambda)}_{ij}: [i] + [j] in W(lambda).
pub fn index_parity(ctx: &Context, idx: &PWIndex) -> Result<u8, KernelError> {
    let w = irreducible(ctx, &idx.lambda)?;
    Ok((w.parity[idx.row] + w.parity[idx.col]) % 2)
}

/// Evaluate: t^{(lambda)}_{ij}(x) = matrix of x in W(lambda) at (i, j).
pub fn evaluate(ctx: &Context, f: &PWElement, x: &Word) -> Result<RatFunc, KernelError> {
    let mut out = RatFunc::zero();
    let mut by_lambda: BTreeMap<Vec<i64>, Vec<(&PWIndex, &RatFunc)>> = BTreeMap::new();
    for (idx, c) in &f.terms {
        by_lambda.entry(idx.lambda.clone()).or_default().push((idx, c));
    }
    for (lambda, entries) in by_lambda {
        let w = irreducible(ctx, &lambda)?;
        let m = w.word_matrix(x);
        for (idx, c) in entries {
            out = &out + &(c * &m[(idx.row, idx.col)]);
        }
    }
    Ok(out)
}

/// Matrix coefficients of an arbitrary module: C with
/// delta(w_j) = sum_i w_i (x) C[i][j], i.e. C[i][j](x) = t(x)_{ij},
/// expanded in the Peter-Weyl basis through the registry
/// decomposition.
pub fn matrix_coefficients(
    ctx: &Context,
    m: &Module,
) -> Result<Vec<Vec<PWElement>>, KernelError> {
    let dec = crate::repcore::decompose(ctx, m)?;
    coefficients_from_decomposition(&dec, &m.parity)
}

/// The shared expansion: for a module with registry decomposition,
/// t(x)_{ab} = sum_s sum_{kl} inc_s[a,k] proj_s[l,b]
/// (-1)^{[psi_s]([a]+[b])} t^{(nu_s)}_{kl}(x).
pub fn coefficients_from_decomposition(
    dec: &crate::repcore::Decomposition,
    parity: &[u8],
) -> Result<Vec<Vec<PWElement>>, KernelError> {
    let d = parity.len();
    let mut out = vec![vec![PWElement::zero(); d]; d];
    for s in &dec.summands {
        for a in 0..d {
            for b in 0..d {
                let sign = if s.iso_parity == 1 && (parity[a] + parity[b]) % 2 == 1 {
                    -1
                } else {
                    1
                };
                for k in 0..s.dim {
                    if s.inclusion[(a, k)].is_zero() {
                        continue;
                    }
                    for l in 0..s.dim {
                        if s.projection[(l, b)].is_zero() {
                            continue;
                        }
                        let c = (&s.inclusion[(a, k)] * &s.projection[(l, b)])
                            .scaled(&RatFunc::from_int(sign));
                        out[a][b].add_term(
                            PWIndex { lambda: s.lambda.clone(), row: k, col: l },
                            &c,
                        );
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Product in the Peter-Weyl basis:
/// t^{(lambda)}_{ij} t^{(mu)}_{rs} = (-1)^{([r]+[s])[i]} T_{(i,r),(j,s)}
/// with T the matrix coefficient of W(lambda) (x) W(mu), re-expressed
/// through the cached decomposition.
pub fn multiply(ctx: &Context, f: &PWElement, g: &PWElement) -> Result<PWElement, KernelError> {
    let mut out = PWElement::zero();
    for (fi, fc) in &f.terms {
        let wl = irreducible(ctx, &fi.lambda)?;
        for (gi, gc) in &g.terms {
            let wm = irreducible(ctx, &gi.lambda)?;
            let td = tensor_decomp(ctx, &fi.lambda, &gi.lambda)?;
            let (prod, dec) = (&td.0, &td.1);
            let a = fi.row * wm.dim + gi.row;
            let b = fi.col * wm.dim + gi.col;
            let outer = if (wm.parity[gi.row] + wm.parity[gi.col]) % 2 == 1
                && wl.parity[fi.row] == 1
            {
                -1
            } else {
                1
            };
            let coeff = (fc * gc).scaled(&RatFunc::from_int(outer));
            for s in &dec.summands {
                let sign = if s.iso_parity == 1 && (prod.parity[a] + prod.parity[b]) % 2 == 1 {
                    -1
                } else {
                    1
                };
                for k in 0..s.dim {
                    if s.inclusion[(a, k)].is_zero() {
                        continue;
                    }
                    for l in 0..s.dim {
                        if s.projection[(l, b)].is_zero() {
                            continue;
                        }
                        let c = (&(&s.inclusion[(a, k)] * &s.projection[(l, b)]) * &coeff)
                            .scaled(&RatFunc::from_int(sign));
                        out.add_term(
                            PWIndex { lambda: s.lambda.clone(), row: k, col: l },
                            &c,
                        );
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Coproduct in the Peter-Weyl basis:
/// Delta_0(t^{(lambda)}_{ij}) =
/// sum_k (-1)^{([i]+[k])([j]+[k])} t^{(lambda)}_{ik} (x) t^{(lambda)}_{kj}.
pub fn coproduct0(
    ctx: &Context,
    f: &PWElement,
) -> Result<Vec<(RatFunc, PWIndex, PWIndex)>, KernelError> {
    let mut out = Vec::new();
    for (idx, c) in &f.terms {
        let w = irreducible(ctx, &idx.lambda)?;
        for k in 0..w.dim {
            let s = ((w.parity[idx.row] + w.parity[k]) * (w.parity[idx.col] + w.parity[k])) % 2;
            let coeff = c.scaled(&RatFunc::from_int(if s == 1 { -1 } else { 1 }));
            out.push((
                coeff,
                PWIndex { lambda: idx.lambda.clone(), row: idx.row, col: k },
                PWIndex { lambda: idx.lambda.clone(), row: k, col: idx.col },
            ));
        }
    }
    Ok(out)
}

/// Counit of the coordinate ring: f(1).
pub fn counit0(ctx: &Context, f: &PWElement) -> Result<RatFunc, KernelError> {
    evaluate(ctx, f, &Word::one())
}

/// Table of tilde elements for a block: table[i][j] is the Peter-Weyl
/// expansion of t~^{(lambda)}_{ij}, the (i, j) matrix coefficient of
/// the dual module, as a combination of t^{(lambda dagger)} entries
/// through the unique dual isomorphism.
pub fn tilde_table(ctx: &Context, lambda: &[i64]) -> Result<Arc<Vec<Vec<PWElement>>>, KernelError> {
    if let Some(t) = ctx.tilde_tables.lock().unwrap().get(lambda) {
        return Ok(t.clone());
    }
    let dd = dual_data(ctx, lambda)?;
    let d = dd.module.dim;
    let psi = &dd.iso.matrix;
    let psi_inv = psi
        .inverse()
        .ok_or_else(|| KernelError::Internal("dual iso is singular".into()))?;
    let reg = irreducible(ctx, lambda)?;
    let mut table = vec![vec![PWElement::zero(); d]; d];
    // D(x) = (-1)^{[psi][x]} psi^{-1} t^{(dagger)}(x) psi, and for a
    // nonzero entry [x] = [i]+[j], so the parity sign folds into the
    // coefficient.
    for i in 0..d {
        for j in 0..d {
            let sign = if dd.iso.parity == 1 && (reg.parity[i] + reg.parity[j]) % 2 == 1 {
                -1
            } else {
                1
            };
            for k in 0..d {
                if psi_inv[(i, k)].is_zero() {
                    continue;
                }
                for l in 0..d {
                    if psi[(l, j)].is_zero() {
                        continue;
                    }
                    let c = (&psi_inv[(i, k)] * &psi[(l, j)])
                        .scaled(&RatFunc::from_int(sign));
                    table[i][j].add_term(
                        PWIndex { lambda: dd.lambda_dagger.clone(), row: k, col: l },
                        &c,
                    );
                }
            }
        }
    }
    let arc = Arc::new(table);
    ctx.tilde_tables
        .lock()
        .unwrap()
        .entry(lambda.to_vec())
        .or_insert_with(|| arc.clone());
    Ok(arc)
}

/// The tilde basis element t~^{(lambda)}_{ij} as a PWElement.
pub fn tilde(ctx: &Context, lambda: &[i64], i: usize, j: usize) -> Result<PWElement, KernelError> {
    Ok(tilde_table(ctx, lambda)?[i][j].clone())
}

/// Antipode: S_0(t^{(lambda)}_{ij}) = (-1)^{[i]([i]+[j])}
/// t~^{(lambda)}_{ji}.
pub fn antipode0(ctx: &Context, f: &PWElement) -> Result<PWElement, KernelError> {
    let mut out = PWElement::zero();
    for (idx, c) in &f.terms {
        let reg = irreducible(ctx, &idx.lambda)?;
        let sign = if reg.parity[idx.row] == 1
            && (reg.parity[idx.row] + reg.parity[idx.col]) % 2 == 1
        {
            -1
        } else {
            1
        };
        let t = tilde(ctx, &idx.lambda, idx.col, idx.row)?;
        out = out.add(&t.scaled(&c.scaled(&RatFunc::from_int(sign))));
    }
    Ok(out)
}

/// S_0^{-1} = S_0 after undoing the square: S_0^2(t_{ij}) =
/// q^{(2rho, wt_i) - (2rho, wt_j)} t_{ij}.
pub fn antipode0_inv(ctx: &Context, f: &PWElement) -> Result<PWElement, KernelError> {
    let two_rho = ctx.datum.two_rho();
    let mut conj = PWElement::zero();
    for (idx, c) in &f.terms {
        let reg = irreducible(ctx, &idx.lambda)?;
        let e = (&reg.weights[idx.col].inner(&two_rho) - &reg.weights[idx.row].inner(&two_rho))
            .to_integer();
        let e: i64 = e
            .try_into()
            .map_err(|_| KernelError::Internal("2rho pairing overflow".into()))?;
        conj.add_term(idx.clone(), &c.scaled(&RatFunc::q_pow(e)));
    }
    antipode0(ctx, &conj)
}

/// Haar functional: the coefficient of the trivial block.
pub fn haar(ctx: &Context, f: &PWElement) -> RatFunc {
    f.unit_coefficient(ctx.n())
}

/// Right translation: x o t^{(lambda)}_{ij} = sum_k t^{(lambda)}(x)_{kj}
/// t^{(lambda)}_{ik}, so that (x o f)(y) = f(y x).
pub fn circ(ctx: &Context, x: &Word, f: &PWElement) -> Result<PWElement, KernelError> {
    let mut out = PWElement::zero();
    for (idx, c) in &f.terms {
        let reg = irreducible(ctx, &idx.lambda)?;
        let m = reg.word_matrix(x);
        for k in 0..reg.dim {
            if m[(k, idx.col)].is_zero() {
                continue;
            }
            out.add_term(
                PWIndex { lambda: idx.lambda.clone(), row: idx.row, col: k },
                &(c * &m[(k, idx.col)]),
            );
        }
    }
    Ok(out)
}

/// Left translation: x . t^{(lambda)}_{ij} = sum_k
/// (-1)^{[x]([k]+[j])} t^{(lambda)}(S^{-1}(x))_{ik} t^{(lambda)}_{kj},
/// so that (x . f)(y) = (-1)^{[x][y]} f(S^{-1}(x) y).
pub fn dot(ctx: &Context, x: &Word, f: &PWElement) -> Result<PWElement, KernelError> {
    let n = ctx.n();
    let xp = x.parity(n);
    let (sg, sw) = antipode_inv_word(x, n);
    let mut out = PWElement::zero();
    for (idx, c) in &f.terms {
        let reg = irreducible(ctx, &idx.lambda)?;
        let m = reg.word_matrix(&sw).scaled(&RatFunc::from_int(sg));
        for k in 0..reg.dim {
            if m[(idx.row, k)].is_zero() {
                continue;
            }
            let sign = if xp == 1 && (reg.parity[k] + reg.parity[idx.col]) % 2 == 1 {
                -1
            } else {
                1
            };
            out.add_term(
                PWIndex { lambda: idx.lambda.clone(), row: k, col: idx.col },
                &(&m[(idx.row, k)].scaled(&RatFunc::from_int(sign)) * c),
            );
        }
    }
    Ok(out)
}

/// Quantum superdimension: supertrace of K_{2rho} in W(lambda).
/// Errors on zero, which would contradict the osp family's defining
/// property.
pub fn superdimension(ctx: &Context, lambda: &[i64]) -> Result<RatFunc, KernelError> {
    let reg = irreducible(ctx, lambda)?;
    let kw = k2rho_word(&ctx.datum);
    let m = reg.word_matrix(&kw);
    let mut out = RatFunc::zero();
    for i in 0..reg.dim {
        if reg.parity[i] == 1 {
            out = &out - &m[(i, i)];
        } else {
            out = &out + &m[(i, i)];
        }
    }
    if out.is_zero() {
        return Err(KernelError::ZeroSuperdimension(format!("{:?}", lambda)));
    }
    Ok(out)
}

/// One failing index tuple of the orthogonality relations.
#[derive(Debug, Clone)]
pub struct OrthFailure {
    pub equation: u8,
    pub indices: (usize, usize, usize, usize),
    pub lhs: RatFunc,
    pub rhs: RatFunc,
}

#[derive(Debug, Clone)]
pub struct OrthReport {
    pub checked: usize,
    pub failures: Vec<OrthFailure>,
}

impl OrthReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verify both orthogonality equations for a block pair, all index
/// combinations, with the left sides computed only from multiply and
/// haar. The sign factors are taken verbatim and never adjusted.
pub fn orthogonality_check(
    ctx: &Context,
    lambda: &[i64],
    mu: &[i64],
) -> Result<OrthReport, KernelError> {
    let wl = irreducible(ctx, lambda)?;
    let wm = irreducible(ctx, mu)?;
    let kw = k2rho_word(&ctx.datum);
    let same = lambda == mu;
    let sd = superdimension(ctx, lambda)?;
    let k_l = wl.word_matrix(&kw);
    let mut failures = Vec::new();
    let mut checked = 0usize;
    let sign = |b: bool| RatFunc::from_int(if b { -1 } else { 1 });

    // first equation:
    // int t^{(l)}_{ij} t~^{(m)}_{rs} (-1)^{[j][r]+[i]+[j]}
    //   = d_{ir} d_{lm} t^{(l)}_{sj}(K_2rho) / SD(l)
    for i in 0..wl.dim {
        for j in 0..wl.dim {
            let t_ij = PWElement::basis(lambda.to_vec(), i, j);
            for r in 0..wm.dim {
                for s in 0..wm.dim {
                    let tt = tilde(ctx, mu, r, s)?;
                    let prod = multiply(ctx, &t_ij, &tt)?;
                    let e = (wl.parity[j] * wm.parity[r] + wl.parity[i] + wl.parity[j]) % 2;
                    let lhs = &haar(ctx, &prod) * &sign(e == 1);
                    let rhs = if same && i == r {
                        &k_l[(s, j)] / &sd
                    } else {
                        RatFunc::zero()
                    };
                    checked += 1;
                    if lhs != rhs {
                        failures.push(OrthFailure {
                            equation: 1,
                            indices: (i, j, r, s),
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
    }

    // second equation:
    // int t~^{(l)}_{ij} t^{(m)}_{rs} (-1)^{[j][r]}
    //   = d_{js} d_{lm} t~^{(l)}_{ir}(K_2rho) / SD(l)
    for i in 0..wl.dim {
        for j in 0..wl.dim {
            let tt = tilde(ctx, lambda, i, j)?;
            for r in 0..wm.dim {
                for s in 0..wm.dim {
                    let t_rs = PWElement::basis(mu.to_vec(), r, s);
                    let prod = multiply(ctx, &tt, &t_rs)?;
                    let e = (wl.parity[j] * wm.parity[r]) % 2;
                    let lhs = &haar(ctx, &prod) * &sign(e == 1);
                    let rhs = if same && j == s {
                        let t_ir = tilde(ctx, lambda, i, r)?;
                        &evaluate(ctx, &t_ir, &kw)? / &sd
                    } else {
                        RatFunc::zero()
                    };
                    checked += 1;
                    if lhs != rhs {
                        failures.push(OrthFailure {
                            equation: 2,
                            indices: (i, j, r, s),
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
    }

    Ok(OrthReport { checked, failures })
}

/// All dominant integral weights with |lambda| <= cutoff, descending
/// highest-weight order.
pub fn dominant_weights_up_to(n: usize, cutoff: usize) -> Vec<Vec<i64>> {
    fn rec(n: usize, max: i64, remaining: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let top = max.min(remaining);
        for v in (0..=top).rev() {
            prefix.push(v);
            rec(n, v, remaining - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for m in 0..=cutoff as i64 {
        let mut all = Vec::new();
        rec(n, m, m, &mut Vec::new(), &mut all);
        for lam in all {
            if lam.iter().sum::<i64>() == m {
                out.push(lam);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uqalg::{coproduct_word, counit_word};

    fn e1() -> Word {
        Word::parse("e1").unwrap()
    }

    #[test]
    fn evaluate_basis_examples() {
        let ctx = Context::new(1).unwrap();
        // t_{11}(k_1) = q with w_1 at index 0
        let t11 = PWElement::basis(vec![1], 0, 0);
        assert_eq!(
            evaluate(&ctx, &t11, &Word::parse("k1").unwrap()).unwrap(),
            RatFunc::q_pow(1)
        );
        // t^{(0)}(x) = counit
        let unit = PWElement::one(1);
        for w in ["e1", "f1", "k1", "e1 f1"] {
            let word = Word::parse(w).unwrap();
            assert_eq!(
                evaluate(&ctx, &unit, &word).unwrap(),
                RatFunc::from_int(counit_word(&word))
            );
        }
        // t_{10}(e_1) = 1: w_1 index 0, w_0 index 1
        let t10 = PWElement::basis(vec![1], 0, 1);
        assert_eq!(evaluate(&ctx, &t10, &e1()).unwrap(), RatFunc::one());
    }

    #[test]
    fn unit_is_neutral() {
        let ctx = Context::new(1).unwrap();
        let one = PWElement::one(1);
        let f = PWElement::basis(vec![1], 0, 2);
        assert_eq!(multiply(&ctx, &one, &f).unwrap(), f);
        assert_eq!(multiply(&ctx, &f, &one).unwrap(), f);
    }

    /// Independent oracle: the dual-product pairing
    /// <fg, x> = sum (-1)^{[g][x1]} f(x1) g(x2) from the coproduct.
    fn pairing_oracle(
        ctx: &Context,
        f: &PWElement,
        g: &PWElement,
        x: &Word,
    ) -> RatFunc {
        let n = ctx.n();
        let gp = g.parity(ctx).unwrap();
        let mut out = RatFunc::zero();
        for (sgn, x1, x2) in coproduct_word(x, n) {
            let s = if gp == 1 && x1.parity(n) == 1 { -1 } else { 1 };
            let term = &evaluate(ctx, f, &x1).unwrap() * &evaluate(ctx, g, &x2).unwrap();
            out = &out + &term.scaled(&RatFunc::from_int(sgn * s));
        }
        out
    }

    #[test]
    fn multiply_matches_pairing_oracle() {
        let ctx = Context::new(1).unwrap();
        let words: Vec<Word> = ["", "k1", "e1", "f1", "e1 f1", "f1 e1", "e1 k1 f1"]
            .iter()
            .map(|s| Word::parse(s).unwrap())
            .collect();
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 2), (2, 2)] {
            for (r, s) in [(0, 0), (1, 1), (0, 2), (2, 0)] {
                let f = PWElement::basis(vec![1], i, j);
                let g = PWElement::basis(vec![1], r, s);
                let prod = multiply(&ctx, &f, &g).unwrap();
                for x in &words {
                    assert_eq!(
                        evaluate(&ctx, &prod, x).unwrap(),
                        pairing_oracle(&ctx, &f, &g, x),
                        "i={} j={} r={} s={} x={:?}",
                        i,
                        j,
                        r,
                        s,
                        x
                    );
                }
            }
        }
    }

    #[test]
    fn product_support_in_expected_blocks() {
        let ctx = Context::new(1).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for r in 0..3 {
                    for s in 0..3 {
                        let f = PWElement::basis(vec![1], i, j);
                        let g = PWElement::basis(vec![1], r, s);
                        let prod = multiply(&ctx, &f, &g).unwrap();
                        for idx in prod.terms.keys() {
                            assert!(
                                idx.lambda == vec![2] || idx.lambda == vec![1] || idx.lambda == vec![0]
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multiply_associative_on_samples() {
        let ctx = Context::new(1).unwrap();
        let els = [
            PWElement::basis(vec![1], 0, 0),
            PWElement::basis(vec![1], 1, 2),
            PWElement::basis(vec![1], 2, 1),
        ];
        for a in &els {
            for b in &els {
                for c in &els {
                    let ab_c = multiply(&ctx, &multiply(&ctx, a, b).unwrap(), c).unwrap();
                    let a_bc = multiply(&ctx, a, &multiply(&ctx, b, c).unwrap()).unwrap();
                    assert_eq!(ab_c, a_bc);
                }
            }
        }
    }

    #[test]
    fn coproduct_sign_and_pairing() {
        let ctx = Context::new(1).unwrap();
        // sign of the t_{10} (x) t_{01} term in Delta0(t_{11}) is -1
        let t11 = PWElement::basis(vec![1], 0, 0);
        let cp = coproduct0(&ctx, &t11).unwrap();
        let term = cp
            .iter()
            .find(|(_, a, b)| a.col == 1 && b.row == 1)
            .unwrap();
        assert_eq!(term.0, &RatFunc::zero() - &RatFunc::one());
        // pairing: <Delta0(f), x (x) y> = <f, xy> with the graded pairing
        let words: Vec<Word> = ["k1", "e1", "f1", "e1 f1"]
            .iter()
            .map(|s| Word::parse(s).unwrap())
            .collect();
        for i in 0..3 {
            for j in 0..3 {
                let f = PWElement::basis(vec![1], i, j);
                let cp = coproduct0(&ctx, &f).unwrap();
                for x in &words {
                    for y in &words {
                        let mut lhs = RatFunc::zero();
                        for (c, a, b) in &cp {
                            let fb = PWElement {
                                terms: [(b.clone(), RatFunc::one())].into_iter().collect(),
                            };
                            let fa = PWElement {
                                terms: [(a.clone(), RatFunc::one())].into_iter().collect(),
                            };
                            let s = if index_parity(&ctx, b).unwrap() == 1
                                && x.parity(1) == 1
                            {
                                -1
                            } else {
                                1
                            };
                            let t = &evaluate(&ctx, &fa, x).unwrap()
                                * &evaluate(&ctx, &fb, y).unwrap();
                            lhs = &lhs + &(&t * c).scaled(&RatFunc::from_int(s));
                        }
                        let rhs = evaluate(&ctx, &f, &x.concat(y)).unwrap();
                        assert_eq!(lhs, rhs, "i={} j={} x={:?} y={:?}", i, j, x, y);
                    }
                }
            }
        }
    }

    #[test]
    fn antipode_pairing_property() {
        // <S0(f), x> = <f, S(x)> on basis elements and sampled words
        for n in 1..=2usize {
            let ctx = Context::new(n).unwrap();
            let words: Vec<Word> = ["", "k1", "e1", "f1", "e1 f1"]
                .iter()
                .map(|s| Word::parse(s).unwrap())
                .collect();
            let mut lam = vec![0i64; n];
            lam[0] = 1;
            let d = 2 * n + 1;
            for i in 0..d {
                for j in 0..d {
                    let f = PWElement::basis(lam.clone(), i, j);
                    let sf = antipode0(&ctx, &f).unwrap();
                    for x in &words {
                        let (sg, sw) = crate::uqalg::antipode_word(x, n);
                        let rhs = evaluate(&ctx, &f, &sw)
                            .unwrap()
                            .scaled(&RatFunc::from_int(sg));
                        assert_eq!(evaluate(&ctx, &sf, x).unwrap(), rhs, "i={} j={}", i, j);
                    }
                }
            }
        }
    }

    #[test]
    fn antipode_vector_formula() {
        // S0(t_{mu nu}) = (-1)^{(d_{mu 0}+d_{nu 0}) d_{mu 0}}
        //                 m_{-mu} t_{-nu, -mu} / m_{-nu} for n = 1, 2
        for n in 1..=2usize {
            let ctx = Context::new(n).unwrap();
            let mut lam = vec![0i64; n];
            lam[0] = 1;
            let pos_of = |mu: i64| -> usize {
                if mu > 0 {
                    (mu - 1) as usize
                } else if mu == 0 {
                    n
                } else {
                    (mu + 2 * n as i64 + 1) as usize
                }
            };
            let minus_q = &RatFunc::zero() - &RatFunc::q_pow(1);
            let m_of = |mu: i64| -> RatFunc {
                let k = if mu > 0 {
                    mu - 1
                } else if mu == 0 {
                    n as i64
                } else {
                    2 * n as i64 + mu
                };
                let mut r = RatFunc::one();
                for _ in 0..k {
                    r = &r * &minus_q;
                }
                r
            };
            for mu in -(n as i64)..=(n as i64) {
                for nu in -(n as i64)..=(n as i64) {
                    let f = PWElement::basis(lam.clone(), pos_of(mu), pos_of(nu));
                    let sf = antipode0(&ctx, &f).unwrap();
                    let sgn = if (u8::from(mu == 0) + u8::from(nu == 0)) * u8::from(mu == 0) % 2
                        == 1
                    {
                        -1
                    } else {
                        1
                    };
                    let coeff = (&m_of(-mu) / &m_of(-nu)).scaled(&RatFunc::from_int(sgn));
                    let expect = PWElement::basis(lam.clone(), pos_of(-nu), pos_of(-mu))
                        .scaled(&coeff);
                    assert_eq!(sf, expect, "n={} mu={} nu={}", n, mu, nu);
                }
            }
        }
    }

    #[test]
    fn antipode_squared_is_k2rho_conjugation() {
        let ctx = Context::new(1).unwrap();
        let words: Vec<Word> = ["k1", "e1", "f1", "e1 f1"]
            .iter()
            .map(|s| Word::parse(s).unwrap())
            .collect();
        let kw = k2rho_word(&ctx.datum);
        let kw_inv = Word(kw.0.iter().map(|g| match g {
            crate::uqalg::Gen::K(i, p) => crate::uqalg::Gen::K(*i, -p),
            g => *g,
        }).collect());
        for lam in [vec![0i64], vec![1], vec![2]] {
            let d = irreducible(&ctx, &lam).unwrap().dim;
            for i in 0..d {
                for j in 0..d {
                    let f = PWElement::basis(lam.clone(), i, j);
                    let ssf = antipode0(&ctx, &antipode0(&ctx, &f).unwrap()).unwrap();
                    for x in &words {
                        let conj = kw.concat(x).concat(&kw_inv);
                        assert_eq!(
                            evaluate(&ctx, &ssf, x).unwrap(),
                            evaluate(&ctx, &f, &conj).unwrap(),
                            "lam={:?} i={} j={}",
                            lam,
                            i,
                            j
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn antipode_inverse_round_trip() {
        let ctx = Context::new(1).unwrap();
        for lam in [vec![1i64], vec![2]] {
            let d = irreducible(&ctx, &lam).unwrap().dim;
            for i in 0..d {
                for j in 0..d {
                    let f = PWElement::basis(lam.clone(), i, j);
                    let r1 = antipode0(&ctx, &antipode0_inv(&ctx, &f).unwrap()).unwrap();
                    let r2 = antipode0_inv(&ctx, &antipode0(&ctx, &f).unwrap()).unwrap();
                    assert_eq!(r1, f);
                    assert_eq!(r2, f);
                }
            }
        }
    }

    #[test]
    fn haar_basics_and_pairing_value() {
        let ctx = Context::new(1).unwrap();
        assert_eq!(haar(&ctx, &PWElement::one(1)), RatFunc::one());
        for i in 0..3 {
            for j in 0..3 {
                assert!(haar(&ctx, &PWElement::basis(vec![1], i, j)).is_zero());
            }
        }
        // haar(t_{11} ttilde_{11}) = q / (q - 1 + q^{-1})
        let a = PWElement::basis(vec![1], 0, 0);
        let b = tilde(&ctx, &[1], 0, 0).unwrap();
        let prod = multiply(&ctx, &a, &b).unwrap();
        let sd = superdimension(&ctx, &[1]).unwrap();
        assert_eq!(haar(&ctx, &prod), &RatFunc::q_pow(1) / &sd);
    }

    #[test]
    fn circ_and_dot_basics() {
        let ctx = Context::new(1).unwrap();
        let t11 = PWElement::basis(vec![1], 0, 0);
        // unit action
        assert_eq!(circ(&ctx, &Word::one(), &t11).unwrap(), t11);
        assert_eq!(dot(&ctx, &Word::one(), &t11).unwrap(), t11);
        // k1 o t11 = q t11, k1 . t11 = q^{-1} t11
        let k1 = Word::parse("k1").unwrap();
        assert_eq!(
            circ(&ctx, &k1, &t11).unwrap(),
            t11.scaled(&RatFunc::q_pow(1))
        );
        assert_eq!(
            dot(&ctx, &k1, &t11).unwrap(),
            t11.scaled(&RatFunc::q_pow(-1))
        );
        // (e1 o t11)(f1) = t11(f1 e1)
        let lhs = evaluate(&ctx, &circ(&ctx, &e1(), &t11).unwrap(), &Word::parse("f1").unwrap())
            .unwrap();
        let rhs = evaluate(&ctx, &t11, &Word::parse("f1 e1").unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn circ_dot_graded_commutation() {
        // x o (y . f) = (-1)^{[x][y]} y . (x o f) on sampled pairs
        let ctx = Context::new(1).unwrap();
        let words: Vec<Word> = ["e1", "f1", "k1"]
            .iter()
            .map(|s| Word::parse(s).unwrap())
            .collect();
        for x in &words {
            for y in &words {
                for i in 0..3 {
                    for j in 0..3 {
                        let f = PWElement::basis(vec![1], i, j);
                        let lhs = circ(&ctx, x, &dot(&ctx, y, &f).unwrap()).unwrap();
                        let mut rhs = dot(&ctx, y, &circ(&ctx, x, &f).unwrap()).unwrap();
                        if x.parity(1) == 1 && y.parity(1) == 1 {
                            rhs = rhs.scaled(&(&RatFunc::zero() - &RatFunc::one()));
                        }
                        assert_eq!(lhs, rhs, "x={:?} y={:?} i={} j={}", x, y, i, j);
                    }
                }
            }
        }
    }

    #[test]
    fn dot_evaluation_property() {
        // (x . f)(y) = (-1)^{[x][y]} f(S^{-1}(x) y)
        let ctx = Context::new(1).unwrap();
        let xs: Vec<Word> = ["e1", "f1", "k1", "e1 f1"]
            .iter()
            .map(|s| Word::parse(s).unwrap())
            .collect();
        let ys = xs.clone();
        for x in &xs {
            for y in &ys {
                for (i, j) in [(0usize, 0usize), (0, 1), (2, 1)] {
                    let f = PWElement::basis(vec![1], i, j);
                    let lhs = evaluate(&ctx, &dot(&ctx, x, &f).unwrap(), y).unwrap();
                    let (sg, sxi) = antipode_inv_word(x, 1);
                    let mut rhs = evaluate(&ctx, &f, &sxi.concat(y))
                        .unwrap()
                        .scaled(&RatFunc::from_int(sg));
                    if x.parity(1) == 1 && y.parity(1) == 1 {
                        rhs = rhs.scaled(&(&RatFunc::zero() - &RatFunc::one()));
                    }
                    assert_eq!(lhs, rhs, "x={:?} y={:?} i={} j={}", x, y, i, j);
                }
            }
        }
    }

    #[test]
    fn superdimension_values() {
        let ctx = Context::new(1).unwrap();
        assert_eq!(superdimension(&ctx, &[0]).unwrap(), RatFunc::one());
        let sd1 = superdimension(&ctx, &[1]).unwrap();
        let expect = &(&RatFunc::q_pow(1) - &RatFunc::one()) + &RatFunc::q_pow(-1);
        assert_eq!(sd1, expect);
        // classical limit: 2 even - 1 odd = 1 for the vector module
        let one = num::BigRational::from_integer(1.into());
        assert_eq!(sd1.eval(&one).unwrap(), num::BigRational::from_integer(1.into()));
    }

    #[test]
    fn superdimension_nonzero_sweep() {
        for n in 1..=2usize {
            let ctx = Context::new(n).unwrap();
            for lam in dominant_weights_up_to(n, 3) {
                let sd = superdimension(&ctx, &lam).unwrap();
                assert!(!sd.is_zero(), "n={} lam={:?}", n, lam);
                // classical limit check at q = 1
                let one = num::BigRational::from_integer(1.into());
                let reg = irreducible(&ctx, &lam).unwrap();
                let even = reg.parity.iter().filter(|&&p| p == 0).count() as i64;
                let odd = reg.dim as i64 - even;
                assert_eq!(
                    sd.eval(&one).unwrap(),
                    num::BigRational::from_integer((even - odd).into()),
                    "n={} lam={:?}",
                    n,
                    lam
                );
            }
        }
    }

    #[test]
    fn orthogonality_small_blocks() {
        let ctx = Context::new(1).unwrap();
        // trivial block: reduces to int 1 = 1
        let r = orthogonality_check(&ctx, &[0], &[0]).unwrap();
        assert!(r.ok(), "{:?}", r.failures);
        // distinct blocks vanish
        let r = orthogonality_check(&ctx, &[0], &[1]).unwrap();
        assert!(r.ok(), "{:?}", r.failures);
        let r = orthogonality_check(&ctx, &[1], &[1]).unwrap();
        assert!(r.ok(), "{:?}", r.failures);
    }

    #[test]
    fn haar_two_sided_invariance() {
        // (int (x) id) Delta0(f) = (id (x) int) Delta0(f) = int(f) 1
        // blockwise on the PW basis with |lambda| <= 2
        let ctx = Context::new(1).unwrap();
        for lam in [vec![0i64], vec![1], vec![2]] {
            let d = irreducible(&ctx, &lam).unwrap().dim;
            for i in 0..d {
                for j in 0..d {
                    let f = PWElement::basis(lam.clone(), i, j);
                    let cp = coproduct0(&ctx, &f).unwrap();
                    let mut left = PWElement::zero();
                    let mut right = PWElement::zero();
                    for (c, a, b) in &cp {
                        let ha = haar(
                            &ctx,
                            &PWElement {
                                terms: [(a.clone(), RatFunc::one())].into_iter().collect(),
                            },
                        );
                        let hb = haar(
                            &ctx,
                            &PWElement {
                                terms: [(b.clone(), RatFunc::one())].into_iter().collect(),
                            },
                        );
                        left = left.add(
                            &PWElement {
                                terms: [(b.clone(), RatFunc::one())].into_iter().collect(),
                            }
                            .scaled(&(&ha * c)),
                        );
                        right = right.add(
                            &PWElement {
                                terms: [(a.clone(), RatFunc::one())].into_iter().collect(),
                            }
                            .scaled(&(&hb * c)),
                        );
                    }
                    let expect = PWElement::one(1).scaled(&haar(&ctx, &f));
                    assert_eq!(left, expect, "lam={:?} i={} j={}", lam, i, j);
                    assert_eq!(right, expect, "lam={:?} i={} j={}", lam, i, j);
                }
            }
        }
    }
}
