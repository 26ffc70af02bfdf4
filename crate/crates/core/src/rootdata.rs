//! Root system and weight lattice data for osp(1|2n): simple roots in the
//! orthonormal epsilon basis, Cartan matrix, graded 2rho, K_{2rho}
//! exponents, and the signed-permutation Weyl orbit.

use num::{BigInt, BigRational, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::KernelError;

/// A weight written in the epsilon basis, with exact rational coordinates.
/// The inner product is the standard one: (eps_i, eps_j) = delta_ij.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeightVec {
    coords: Vec<BigRational>,
}

impl WeightVec {
    pub fn zero(n: usize) -> Self {
        WeightVec { coords: vec![BigRational::zero(); n] }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        WeightVec {
            coords: coords.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        }
    }

    pub fn from_rationals(coords: Vec<BigRational>) -> Self {
        WeightVec { coords }
    }

    /// eps_i, 1-based.
    pub fn epsilon(n: usize, i: usize) -> Self {
        let mut w = Self::zero(n);
        w.coords[i - 1] = BigRational::one();
        w
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn inner(&self, other: &WeightVec) -> BigRational {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scaled(&self, c: i64) -> Self {
        let c = BigRational::from_integer(BigInt::from(c));
        WeightVec { coords: self.coords.iter().map(|x| x * &c).collect() }
    }

    /// Integer coordinates, if all coordinates are integers.
    pub fn as_ints(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().try_into().ok()
                } else {
                    None
                }
            })
            .collect()
    }
}

use num::One;

impl Add for &WeightVec {
    type Output = WeightVec;
    fn add(self, rhs: &WeightVec) -> WeightVec {
        WeightVec {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &WeightVec {
    type Output = WeightVec;
    fn sub(self, rhs: &WeightVec) -> WeightVec {
        WeightVec {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &WeightVec {
    type Output = WeightVec;
    fn neg(self) -> WeightVec {
        WeightVec { coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

// JSON: a weight is a list of "num/den" strings.
impl Serialize for WeightVec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightVec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let v: Vec<String> = Vec::deserialize(d)?;
        let coords = v
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WeightVec { coords })
    }
}

/// Root datum of osp(1|2n): alpha_i = eps_i - eps_{i+1} for i < n and
/// alpha_n = eps_n, which is the odd simple root.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub n: usize,
    pub simple_roots: Vec<WeightVec>,
    /// Parity of each simple root: alpha_n odd, all others even.
    pub parity: Vec<u8>,
    pub cartan: Vec<Vec<i64>>,
    pub highest_root: WeightVec,
}

pub fn build_root_datum(n: usize) -> Result<RootDatum, KernelError> {
    if n == 0 {
        return Err(KernelError::ZeroRank);
    }
    let mut simple_roots = Vec::with_capacity(n);
    for i in 1..n {
        simple_roots.push(&WeightVec::epsilon(n, i) - &WeightVec::epsilon(n, i + 1));
    }
    simple_roots.push(WeightVec::epsilon(n, n));
    let parity: Vec<u8> = (1..=n).map(|i| u8::from(i == n)).collect();
    let mut cartan = vec![vec![0i64; n]; n];
    for i in 0..n {
        let aii = simple_roots[i].inner(&simple_roots[i]);
        for j in 0..n {
            let v = BigRational::from_integer(BigInt::from(2)) * simple_roots[i].inner(&simple_roots[j]) / &aii;
            debug_assert!(v.is_integer());
            cartan[i][j] = i64::try_from(v.to_integer()).expect("small Cartan entry");
        }
    }
    let highest_root = WeightVec::epsilon(n, 1).scaled(2);
    Ok(RootDatum { n, simple_roots, parity, cartan, highest_root })
}

impl RootDatum {
    /// Dynkin-type labels (l_1..l_n) of mu: l_i = 2(mu,alpha_i)/(alpha_i,alpha_i)
    /// for i < n and l_n = (mu,alpha_n)/(alpha_n,alpha_n).
    pub fn integral_labels(&self, mu: &WeightVec) -> Vec<BigRational> {
        (0..self.n)
            .map(|i| {
                let a = &self.simple_roots[i];
                let norm = a.inner(a);
                let factor = if i + 1 < self.n {
                    BigRational::from_integer(BigInt::from(2))
                } else {
                    BigRational::one()
                };
                factor * mu.inner(a) / norm
            })
            .collect()
    }

    pub fn is_integral(&self, mu: &WeightVec) -> bool {
        self.integral_labels(mu).iter().all(|l| l.is_integer())
    }

    pub fn is_dominant(&self, mu: &WeightVec) -> bool {
        self.integral_labels(mu)
            .iter()
            .all(|l| l.is_integer() && !l.is_negative())
    }

    /// The graded sum of positive roots: even positive roots
    /// {eps_i - eps_j, eps_i + eps_j (i<j), 2 eps_i} minus the odd ones
    /// {eps_i}. Comes out as sum_i (2(n-i)+1) eps_i.
    pub fn two_rho(&self) -> WeightVec {
        let n = self.n;
        let mut acc = WeightVec::zero(n);
        for i in 1..=n {
            for j in (i + 1)..=n {
                acc = &acc + &(&WeightVec::epsilon(n, i) - &WeightVec::epsilon(n, j));
                acc = &acc + &(&WeightVec::epsilon(n, i) + &WeightVec::epsilon(n, j));
            }
            acc = &acc + &WeightVec::epsilon(n, i).scaled(2);
            acc = &acc - &WeightVec::epsilon(n, i);
        }
        acc
    }

    /// Integers (c_1..c_n) with sum_j c_j alpha_j = 2rho, so that
    /// K_{2rho} = prod_j k_j^{c_j} conjugates e_i to q^{(2rho,alpha_i)} e_i.
    pub fn k2rho_exponents(&self) -> Result<Vec<i64>, KernelError> {
        let target = self.two_rho();
        // alpha_i = eps_i - eps_{i+1} (i<n), alpha_n = eps_n: solve by
        // back-substitution from the last coordinate.
        let t = target.as_ints().ok_or(KernelError::NoK2RhoSolution)?;
        let n = self.n;
        let mut c = vec![0i64; n];
        // coordinate i of sum c_j alpha_j: c_i - c_{i-1} for i<n (0-based),
        // last coordinate: c_{n-1} - c_{n-2}.
        // Solve forward: coord_0 = c_0 => c_0 = t_0; coord_i = c_i - c_{i-1}.
        for i in 0..n {
            c[i] = t[i] + if i > 0 { c[i - 1] } else { 0 };
        }
        // verify
        let mut acc = WeightVec::zero(n);
        for (j, root) in self.simple_roots.iter().enumerate() {
            acc = &acc + &root.scaled(c[j]);
        }
        if acc != target {
            return Err(KernelError::NoK2RhoSolution);
        }
        Ok(c)
    }

    /// The dominant representative of mu under the hyperoctahedral Weyl
    /// group (signed coordinate permutations): sort the absolute values of
    /// the coordinates descending.
    pub fn dominant_in_weyl_orbit(&self, mu: &WeightVec) -> Result<WeightVec, KernelError> {
        if !self.is_integral(mu) {
            return Err(KernelError::NotIntegral(mu.to_string()));
        }
        let mut coords: Vec<BigRational> = mu.coords().iter().map(|c| c.abs()).collect();
        coords.sort_by(|a, b| b.cmp(a));
        Ok(WeightVec::from_rationals(coords))
    }
}
