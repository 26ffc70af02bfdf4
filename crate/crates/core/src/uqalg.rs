//! The quantized enveloping superalgebra U_q(osp(1|2n)) as formal words in
//! the generators k_i^{+-1}, e_i, f_i, together with the Hopf structure
//! maps on generators and exact relation checking in concrete modules.
//!
//! Convention (fixed once; every downstream identity is checked against it):
//!   Delta(k_i) = k_i (x) k_i
//!   Delta(e_i) = e_i (x) k_i + 1 (x) e_i
//!   Delta(f_i) = f_i (x) 1 + k_i^{-1} (x) f_i
//!   S(k_i) = k_i^{-1},  S(e_i) = -e_i k_i^{-1},  S(f_i) = -k_i f_i
//! extended with the graded tensor product rule
//! (a(x)b)(c(x)d) = (-1)^{[b][c]} ac (x) bd and the graded
//! anti-homomorphism rule S(ab) = (-1)^{[a][b]} S(b) S(a).

use std::fmt;

use crate::error::KernelError;
use crate::linalg::Mat;
use crate::repcore::Module;
use crate::rootdata::RootDatum;
use crate::scalars::{LaurentPoly, RatFunc};

/// A generator symbol; indices are 1-based. K powers compose additively.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Gen {
    E(usize),
    F(usize),
    K(usize, i64),
}

impl Gen {
    /// e_n and f_n are odd; everything else is even.
    pub fn parity(&self, n: usize) -> u8 {
        match self {
            Gen::E(i) | Gen::F(i) => u8::from(*i == n),
            Gen::K(_, _) => 0,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E(i) => write!(f, "e{}", i),
            Gen::F(i) => write!(f, "f{}", i),
            Gen::K(i, 1) => write!(f, "k{}", i),
            Gen::K(i, p) => write!(f, "k{}^{}", i, p),
        }
    }
}

/// A formal word in the generators; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: Gen) -> Self {
        Word(vec![g])
    }

    pub fn parity(&self, n: usize) -> u8 {
        self.0.iter().map(|g| g.parity(n) as u32).sum::<u32>() as u8 & 1
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend(other.0.iter().copied());
        Word(v)
    }

    /// Parse a whitespace-separated word, e.g. "e1 f1 k2^-1".
    pub fn parse(s: &str) -> Result<Word, KernelError> {
        let mut gens = Vec::new();
        for tok in s.split_whitespace() {
            let (head, pow) = match tok.split_once('^') {
                Some((h, p)) => {
                    let p: i64 = p
                        .parse()
                        .map_err(|_| KernelError::Invalid(format!("bad power in '{}'", tok)))?;
                    (h, p)
                }
                None => (tok, 1),
            };
            let (kind, idx) = head.split_at(1);
            let i: usize = idx
                .parse()
                .map_err(|_| KernelError::Invalid(format!("bad generator '{}'", tok)))?;
            let g = match kind {
                "e" if pow == 1 => Gen::E(i),
                "f" if pow == 1 => Gen::F(i),
                "k" => Gen::K(i, pow),
                _ => return Err(KernelError::Invalid(format!("bad generator '{}'", tok))),
            };
            gens.push(g);
        }
        Ok(Word(gens))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A signed sum of word-tensor-word terms.
pub type TensorSum = Vec<(i64, Word, Word)>;

pub fn coproduct_gen(g: Gen) -> TensorSum {
    match g {
        Gen::K(i, p) => vec![(1, Word::gen(Gen::K(i, p)), Word::gen(Gen::K(i, p)))],
        Gen::E(i) => vec![
            (1, Word::gen(Gen::E(i)), Word::gen(Gen::K(i, 1))),
            (1, Word::one(), Word::gen(Gen::E(i))),
        ],
        Gen::F(i) => vec![
            (1, Word::gen(Gen::F(i)), Word::one()),
            (1, Word::gen(Gen::K(i, -1)), Word::gen(Gen::F(i))),
        ],
    }
}

/// Delta on a word, multiplied out with the graded tensor product rule.
pub fn coproduct_word(w: &Word, n: usize) -> TensorSum {
    let mut acc: TensorSum = vec![(1, Word::one(), Word::one())];
    for g in &w.0 {
        let mut next = Vec::new();
        for (s, a, b) in &acc {
            for (t, c, d) in coproduct_gen(*g) {
                // (a (x) b)(c (x) d) = (-1)^{[b][c]} ac (x) bd
                let sign = if b.parity(n) & c.parity(n) == 1 { -1 } else { 1 };
                next.push((s * t * sign, a.concat(&c), b.concat(&d)));
            }
        }
        acc = next;
    }
    acc
}

pub fn antipode_gen(g: Gen) -> (i64, Word) {
    match g {
        Gen::K(i, p) => (1, Word::gen(Gen::K(i, -p))),
        Gen::E(i) => (-1, Word(vec![Gen::E(i), Gen::K(i, -1)])),
        Gen::F(i) => (-1, Word(vec![Gen::K(i, 1), Gen::F(i)])),
    }
}

/// S^{-1}(k_i) = k_i^{-1}, S^{-1}(e_i) = -k_i^{-1} e_i, S^{-1}(f_i) = -f_i k_i.
pub fn antipode_inv_gen(g: Gen) -> (i64, Word) {
    match g {
        Gen::K(i, p) => (1, Word::gen(Gen::K(i, -p))),
        Gen::E(i) => (-1, Word(vec![Gen::K(i, -1), Gen::E(i)])),
        Gen::F(i) => (-1, Word(vec![Gen::F(i), Gen::K(i, 1)])),
    }
}

fn anti_hom_word(w: &Word, n: usize, on_gen: fn(Gen) -> (i64, Word)) -> (i64, Word) {
    // S(x_1 ... x_m) = (-1)^{sum_{a<b} [x_a][x_b]} S(x_m) ... S(x_1),
    // and the exponent is C(odd_count, 2) for a homogeneous word.
    let odd_count = w.0.iter().filter(|g| g.parity(n) == 1).count() as i64;
    let mut sign = if (odd_count * (odd_count - 1) / 2) % 2 == 1 { -1i64 } else { 1 };
    let mut out = Word::one();
    for g in w.0.iter().rev() {
        let (s, img) = on_gen(*g);
        sign *= s;
        out = out.concat(&img);
    }
    (sign, out)
}

pub fn antipode_word(w: &Word, n: usize) -> (i64, Word) {
    anti_hom_word(w, n, antipode_gen)
}

pub fn antipode_inv_word(w: &Word, n: usize) -> (i64, Word) {
    anti_hom_word(w, n, antipode_inv_gen)
}

/// Counit: 1 on k-powers, 0 on e and f; multiplicative on words.
pub fn counit_word(w: &Word) -> i64 {
    if w.0.iter().all(|g| matches!(g, Gen::K(_, _))) {
        1
    } else {
        0
    }
}

/// Outcome of an exact identity battery; empty failure list means pass.
#[derive(Debug, Default)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn assert_eq_mat(&mut self, label: &str, lhs: &Mat, rhs: &Mat) {
        self.checked += 1;
        if lhs != rhs {
            for i in 0..lhs.rows {
                for j in 0..lhs.cols {
                    if lhs[(i, j)] != rhs[(i, j)] {
                        self.failures.push(format!(
                            "{}: entry ({}, {}): lhs = {}, rhs = {}",
                            label,
                            i,
                            j,
                            lhs[(i, j)],
                            rhs[(i, j)]
                        ));
                        return;
                    }
                }
            }
        }
    }
}

fn pairing_exp(d: &RootDatum, i: usize, j: usize) -> i64 {
    let v = d.simple_roots[i - 1].inner(&d.simple_roots[j - 1]);
    debug_assert!(v.is_integer());
    i64::try_from(v.to_integer()).expect("small pairing")
}

/// Ad e_i(x) = e_i x - (-1)^{[e_i][x]} k_i x k_i^{-1} e_i, on matrices.
fn ad_e(rep: &Module, i: usize, x: &Mat, x_parity: u8) -> (Mat, u8) {
    let n = rep.n;
    let ei = rep.gen_matrix(Gen::E(i));
    let ki = rep.gen_matrix(Gen::K(i, 1));
    let ki_inv = rep.gen_matrix(Gen::K(i, -1));
    let lhs = ei.mul(x);
    let rhs = ki.mul(x).mul(&ki_inv).mul(&ei);
    let sign_neg = Gen::E(i).parity(n) & x_parity == 1;
    let out = if sign_neg { lhs.add(&rhs) } else { lhs.sub(&rhs) };
    (out, (x_parity + Gen::E(i).parity(n)) & 1)
}

fn ad_f(rep: &Module, i: usize, x: &Mat, x_parity: u8) -> (Mat, u8) {
    let n = rep.n;
    let fi = rep.gen_matrix(Gen::F(i));
    let ki = rep.gen_matrix(Gen::K(i, 1));
    let ki_inv = rep.gen_matrix(Gen::K(i, -1));
    let lhs = fi.mul(x);
    let rhs = ki.mul(x).mul(&ki_inv).mul(&fi);
    let sign_neg = Gen::F(i).parity(n) & x_parity == 1;
    let out = if sign_neg { lhs.add(&rhs) } else { lhs.sub(&rhs) };
    (out, (x_parity + Gen::F(i).parity(n)) & 1)
}

/// Verify all defining relations of U_q(osp(1|2n)) as exact matrix
/// identities in the given module.
pub fn check_relations(rep: &Module, datum: &RootDatum) -> CheckReport {
    let n = rep.n;
    let mut report = CheckReport::default();
    let id = Mat::identity(rep.dim);
    let zero = Mat::zero(rep.dim, rep.dim);

    for i in 1..=n {
        let prod = rep.gen_matrix(Gen::K(i, 1)).mul(&rep.gen_matrix(Gen::K(i, -1)));
        report.assert_eq_mat(&format!("k{} k{}^-1 = 1", i, i), &prod, &id);
    }
    for i in 1..=n {
        for j in 1..=n {
            let ki = rep.gen_matrix(Gen::K(i, 1));
            let kj = rep.gen_matrix(Gen::K(j, 1));
            report.assert_eq_mat(&format!("k{} k{} = k{} k{}", i, j, j, i), &ki.mul(&kj), &kj.mul(&ki));

            let a = pairing_exp(datum, i, j);
            let ej = rep.gen_matrix(Gen::E(j));
            let lhs = ki.mul(&ej);
            let rhs = ej.mul(&ki).scaled(&RatFunc::q_pow(a));
            report.assert_eq_mat(&format!("k{} e{} = q^({},{}) e{} k{}", i, j, i, j, j, i), &lhs, &rhs);

            let fj = rep.gen_matrix(Gen::F(j));
            let lhs = ki.mul(&fj);
            let rhs = fj.mul(&ki).scaled(&RatFunc::q_pow(-a));
            report.assert_eq_mat(&format!("k{} f{} = q^-({},{}) f{} k{}", i, j, i, j, j, i), &lhs, &rhs);
        }
    }

    // Cartan commutator [e_i, f_j} = delta_ij (k_i - k_i^-1)/(q - q^-1)
    let qdiff = RatFunc::from_poly(&LaurentPoly::q_pow(1) - &LaurentPoly::q_pow(-1));
    for i in 1..=n {
        for j in 1..=n {
            let ei = rep.gen_matrix(Gen::E(i));
            let fj = rep.gen_matrix(Gen::F(j));
            let both_odd = Gen::E(i).parity(n) & Gen::F(j).parity(n) == 1;
            let bracket = if both_odd {
                ei.mul(&fj).add(&fj.mul(&ei))
            } else {
                ei.mul(&fj).sub(&fj.mul(&ei))
            };
            let rhs = if i == j {
                rep.gen_matrix(Gen::K(i, 1))
                    .sub(&rep.gen_matrix(Gen::K(i, -1)))
                    .scaled(&(&RatFunc::one() / &qdiff))
            } else {
                zero.clone()
            };
            report.assert_eq_mat(&format!("[e{}, f{}}}", i, j), &bracket, &rhs);
        }
    }

    // Serre relations via the Ad operators
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let power = 1 - datum.cartan[i - 1][j - 1];
            debug_assert!(power >= 0);
            let mut x = rep.gen_matrix(Gen::E(j)).clone();
            let mut p = Gen::E(j).parity(n);
            for _ in 0..power {
                let (nx, np) = ad_e(rep, i, &x, p);
                x = nx;
                p = np;
            }
            report.assert_eq_mat(&format!("(Ad e{})^{}(e{}) = 0", i, power, j), &x, &zero);

            let mut x = rep.gen_matrix(Gen::F(j)).clone();
            let mut p = Gen::F(j).parity(n);
            for _ in 0..power {
                let (nx, np) = ad_f(rep, i, &x, p);
                x = nx;
                p = np;
            }
            report.assert_eq_mat(&format!("(Ad f{})^{}(f{}) = 0", i, power, j), &x, &zero);
        }
    }

    report
}

/// Verify the Hopf axioms involving counit and antipode for every
/// generator, as matrix identities in the given module, plus the
/// S o S^{-1} = id check.
pub fn check_hopf_axioms(rep: &Module) -> CheckReport {
    let n = rep.n;
    let mut report = CheckReport::default();
    let id = Mat::identity(rep.dim);

    let mut gens = Vec::new();
    for i in 1..=n {
        gens.push(Gen::E(i));
        gens.push(Gen::F(i));
        gens.push(Gen::K(i, 1));
        gens.push(Gen::K(i, -1));
    }
    for g in gens {
        let w = Word::gen(g);
        let g_mat = rep.word_matrix(&w);
        let eps = counit_word(&w);

        // (eps (x) id) Delta(g) = g and (id (x) eps) Delta(g) = g
        let mut left = Mat::zero(rep.dim, rep.dim);
        let mut right = Mat::zero(rep.dim, rep.dim);
        // m(S (x) id) Delta(g) = eps(g) 1 = m(id (x) S) Delta(g)
        let mut s_left = Mat::zero(rep.dim, rep.dim);
        let mut s_right = Mat::zero(rep.dim, rep.dim);
        for (sign, a, b) in coproduct_word(&w, n) {
            let sa = RatFunc::from_int(sign * counit_word(&a));
            left = left.add(&rep.word_matrix(&b).scaled(&sa));
            let sb = RatFunc::from_int(sign * counit_word(&b));
            right = right.add(&rep.word_matrix(&a).scaled(&sb));

            let (s_sign, s_word) = antipode_word(&a, n);
            let term = rep.word_matrix(&s_word).mul(&rep.word_matrix(&b));
            s_left = s_left.add(&term.scaled(&RatFunc::from_int(sign * s_sign)));

            let (s_sign, s_word) = antipode_word(&b, n);
            let term = rep.word_matrix(&a).mul(&rep.word_matrix(&s_word));
            s_right = s_right.add(&term.scaled(&RatFunc::from_int(sign * s_sign)));
        }
        report.assert_eq_mat(&format!("(eps x id) Delta({}) = {}", g, g), &left, &g_mat);
        report.assert_eq_mat(&format!("(id x eps) Delta({}) = {}", g, g), &right, &g_mat);
        let eps_id = id.scaled(&RatFunc::from_int(eps));
        report.assert_eq_mat(&format!("m(S x id) Delta({}) = eps", g), &s_left, &eps_id);
        report.assert_eq_mat(&format!("m(id x S) Delta({}) = eps", g), &s_right, &eps_id);

        // S^{-1} o S = id and S o S^{-1} = id
        let (s1, sw) = antipode_word(&w, n);
        let (s2, ssw) = antipode_inv_word(&sw, n);
        let round = rep.word_matrix(&ssw).scaled(&RatFunc::from_int(s1 * s2));
        report.assert_eq_mat(&format!("S^-1(S({})) = {}", g, g), &round, &g_mat);
        let (s1, sw) = antipode_inv_word(&w, n);
        let (s2, ssw) = antipode_word(&sw, n);
        let round = rep.word_matrix(&ssw).scaled(&RatFunc::from_int(s1 * s2));
        report.assert_eq_mat(&format!("S(S^-1({})) = {}", g, g), &round, &g_mat);
    }
    report
}

/// S^2(x) = K_{2rho} x K_{2rho}^{-1} on every generator, in the module.
pub fn check_s_squared(rep: &Module, datum: &RootDatum) -> CheckReport {
    let n = rep.n;
    let mut report = CheckReport::default();
    let c = datum.k2rho_exponents().expect("2rho lies in the root lattice");
    let k2rho: Word = Word((1..=n).map(|i| Gen::K(i, c[i - 1])).collect());
    let k2rho_inv: Word = Word((1..=n).map(|i| Gen::K(i, -c[i - 1])).collect());
    let km = rep.word_matrix(&k2rho);
    let km_inv = rep.word_matrix(&k2rho_inv);
    let mut gens = Vec::new();
    for i in 1..=n {
        gens.push(Gen::E(i));
        gens.push(Gen::F(i));
        gens.push(Gen::K(i, 1));
    }
    for g in gens {
        let w = Word::gen(g);
        let (s1, sw) = antipode_word(&w, n);
        let (s2, ssw) = antipode_word(&sw, n);
        let lhs = rep.word_matrix(&ssw).scaled(&RatFunc::from_int(s1 * s2));
        let rhs = km.mul(&rep.word_matrix(&w)).mul(&km_inv);
        report.assert_eq_mat(&format!("S^2({}) = K_2rho {} K_2rho^-1", g, g), &lhs, &rhs);
    }
    report
}

/// The word K_{2rho} for this root datum.
pub fn k2rho_word(datum: &RootDatum) -> Word {
    let c = datum.k2rho_exponents().expect("2rho lies in the root lattice");
    Word((1..=datum.n).map(|i| Gen::K(i, c[i - 1])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_of_generators() {
        assert_eq!(Gen::E(1).parity(2), 0);
        assert_eq!(Gen::E(2).parity(2), 1);
        assert_eq!(Gen::F(2).parity(2), 1);
        assert_eq!(Gen::K(2, -3).parity(2), 0);
    }

    #[test]
    fn antipode_of_grouplike_product() {
        // S(k_1 k_2) = k_2^-1 k_1^-1
        let w = Word(vec![Gen::K(1, 1), Gen::K(2, 1)]);
        let (sign, img) = antipode_word(&w, 2);
        assert_eq!(sign, 1);
        assert_eq!(img, Word(vec![Gen::K(2, -1), Gen::K(1, -1)]));
    }

    #[test]
    fn coproduct_term_counts() {
        assert_eq!(coproduct_word(&Word::gen(Gen::E(1)), 1).len(), 2);
        assert_eq!(coproduct_word(&Word(vec![Gen::E(1), Gen::F(1)]), 1).len(), 4);
        // the identity word is grouplike
        let one = coproduct_word(&Word::one(), 1);
        assert_eq!(one, vec![(1, Word::one(), Word::one())]);
    }

    #[test]
    fn word_parsing() {
        let w = Word::parse("e1 f1 k2^-1").unwrap();
        assert_eq!(w, Word(vec![Gen::E(1), Gen::F(1), Gen::K(2, -1)]));
        assert!(Word::parse("g3").is_err());
        assert!(Word::parse("e1^2").is_err());
        assert_eq!(Word::parse("").unwrap(), Word::one());
    }

    #[test]
    fn counit_values() {
        assert_eq!(counit_word(&Word::parse("k1 k2^-3").unwrap()), 1);
        assert_eq!(counit_word(&Word::parse("k1 e1").unwrap()), 0);
        assert_eq!(counit_word(&Word::one()), 1);
    }
}
