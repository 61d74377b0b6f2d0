use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::{digits_to_bits, parse_decimal_bits, primes_up_to, BigFloat};

pub const DEFAULT_WEIGHTS_BASE: &str = "1.15";
/// w_j = base^{WEIGHT_EXPONENT - j}
const WEIGHT_EXPONENT: i32 = 40;

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeParams {
    pub n: usize,
    pub weights: Vec<BigFloat>,
    pub nu: u32,
    pub r: u32,
    pub thetas: Vec<BigFloat>,
    /// Set when the weights are the powers of a base, for reports.
    pub weights_base: Option<String>,
}

impl LatticeParams {
    /// Weights 1.15^{40-j}, targets θ_1 = π and θ_j = 0 otherwise.
    pub fn new(n: usize, nu: u32, r: u32) -> Result<Self> {
        Self::with_weights_base(n, nu, r, DEFAULT_WEIGHTS_BASE)
    }

    pub fn with_weights_base(n: usize, nu: u32, r: u32, base: &str) -> Result<Self> {
        let bits = Self::bits_for(nu);
        let b = parse_decimal_bits(base, bits)?;
        let weights = (1..=n as i32).map(|j| Float::with_val(bits, (&b).pow(WEIGHT_EXPONENT - j))).collect();
        let p = Self { n, weights, nu, r, thetas: default_thetas(n, bits), weights_base: Some(base.to_string()) };
        p.validate()?;
        Ok(p)
    }

    pub fn with_weights(mut self, weights: Vec<BigFloat>) -> Result<Self> {
        self.weights = weights;
        self.weights_base = None;
        self.validate()?;
        Ok(self)
    }

    pub fn with_thetas(mut self, thetas: Vec<BigFloat>) -> Result<Self> {
        self.thetas = thetas;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if self.n < 2 {
            return bad(format!("n = {} < 2", self.n));
        }
        if self.nu <= self.r {
            return bad(format!("need ν > r, got ν = {}, r = {}", self.nu, self.r));
        }
        if self.weights.len() != self.n || self.thetas.len() != self.n {
            return bad(format!(
                "{} weights and {} targets for n = {}",
                self.weights.len(),
                self.thetas.len(),
                self.n
            ));
        }
        if self.weights.iter().any(|w| !w.is_finite() || *w <= 0) {
            return bad("weights must be positive".into());
        }
        let two_pi = Float::with_val(self.bits(), rug::float::Constant::Pi) * 2u32;
        if self.thetas.iter().any(|t| !t.is_finite() || *t < 0 || *t >= two_pi) {
            return bad("targets must lie in [0, 2π)".into());
        }
        Ok(())
    }

    fn bits_for(nu: u32) -> u32 {
        digits_to_bits(nu + 20)
    }

    /// Precision of the floor evaluations: ν + 20 decimal digits.
    pub fn bits(&self) -> u32 {
        Self::bits_for(self.nu)
    }

    pub fn primes(&self) -> Vec<u64> {
        let limit = (self.n as u64 * 20).max(100);
        primes_up_to(limit).expect("limit ≥ 2").primes()[..self.n].to_vec()
    }

    /// 2^ν n⁴, the sentinel entry of the target row.
    pub fn sentinel(&self) -> Integer {
        Integer::from(self.n as u64).pow(4) << self.nu
    }
}

fn default_thetas(n: usize, bits: u32) -> Vec<BigFloat> {
    (0..n)
        .map(|j| if j == 0 { Float::with_val(bits, rug::float::Constant::Pi) } else { Float::new(bits) })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    pub rows: Vec<Vec<Integer>>,
}

impl LatticeBasis {
    pub fn new(rows: Vec<Vec<Integer>>) -> Self {
        Self { rows }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self { rows: rows.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// ⌊x⌋ where x carries relative error below 2^{4-prec}. Values whose
/// fractional part lies within that error of an integer are rejected.
fn certain_floor(x: &Float, what: impl Fn() -> String) -> Result<Integer> {
    let fl = x.clone().floor();
    let frac = Float::with_val(x.prec(), x - &fl);
    let mut tol = Float::with_val(64, x.abs_ref());
    tol >>= x.prec() - 4;
    if frac < tol || Float::with_val(x.prec(), 1 - frac) < tol {
        return Err(Error::PrecisionInsufficient(what()));
    }
    Ok(fl.to_integer().expect("finite"))
}

/// ⌊w θ 2^ν⌋ computed exactly from the stored binary values.
fn exact_floor(w: &Float, theta: &Float, nu: u32) -> Integer {
    let (mut prod, _) = Float::with_val_round(w.prec() + theta.prec(), w * theta, Round::Zero);
    prod <<= nu;
    prod.floor().to_integer().expect("finite")
}

fn try_build(params: &LatticeParams, bits: u32) -> Result<LatticeBasis> {
    let n = params.n;
    let primes = params.primes();
    let two_pi = Float::with_val(bits, rug::float::Constant::Pi) * 2u32;
    let mut rows = vec![vec![Integer::new(); n + 2]; n + 2];
    for j in 0..n {
        let mut x = Float::with_val(bits, &two_pi * &params.weights[j]);
        x <<= params.nu;
        rows[j][j] = certain_floor(&x, || format!("2π w_{} 2^ν", j + 1))?;

        let mut y = Float::with_val(bits, Float::with_val(bits, primes[j]).ln() * &params.weights[j]);
        y <<= params.nu - params.r;
        rows[n][j] = certain_floor(&y, || format!("w_{} 2^(ν-r) log {}", j + 1, primes[j]))?;

        rows[n + 1][j] = -exact_floor(&params.weights[j], &params.thetas[j], params.nu);
    }
    rows[n][n + 1] = Integer::from(1);
    rows[n + 1][n] = params.sentinel();
    Ok(LatticeBasis { rows })
}

/// The lattice with diagonal rows ⌊2π w_j 2^ν⌋, the row
/// (⌊w_j 2^{ν-r} log p_j⌋, 0, 1) and the row (-⌊w_j θ_j 2^ν⌋, 2^ν n⁴, 0).
pub fn build_lattice(params: &LatticeParams) -> Result<LatticeBasis> {
    params.validate()?;
    match try_build(params, params.bits()) {
        Err(Error::PrecisionInsufficient(_)) => try_build(params, 2 * params.bits()),
        r => r,
    }
}

/// Exact Gram determinant det(B Bᵀ).
pub fn gram_determinant(basis: &LatticeBasis) -> Integer {
    let k = basis.dim();
    let mut g: Vec<Vec<Rational>> = (0..k)
        .map(|i| (0..k).map(|j| Rational::from(dot(&basis.rows[i], &basis.rows[j]))).collect())
        .collect();
    let det = rational_det(&mut g);
    det.into_numer_denom().0
}

fn dot(a: &[Integer], b: &[Integer]) -> Integer {
    a.iter().zip(b).map(|(x, y)| Integer::from(x * y)).sum()
}

fn rational_det(m: &mut [Vec<Rational>]) -> Rational {
    let k = m.len();
    let mut det = Rational::from(1);
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| m[i][c] != 0) else {
            return Rational::new();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..k {
            let f = Rational::from(&m[i][c] / &m[c][c]);
            for j in c..k {
                let sub = Rational::from(&f * &m[c][j]);
                m[i][j] -= sub;
            }
        }
    }
    det
}

/// Integer coefficients c with Σ c_i row_i = v, if v lies in the lattice.
pub fn basis_coordinates(basis: &LatticeBasis, v: &[Integer]) -> Option<Vec<Integer>> {
    let k = basis.dim();
    let dim = v.len();
    // solve cᵀ B = vᵀ via Bᵀ c = v by elimination on the augmented system
    let mut a: Vec<Vec<Rational>> = (0..dim)
        .map(|r| {
            let mut row: Vec<Rational> = (0..k).map(|i| Rational::from(&basis.rows[i][r])).collect();
            row.push(Rational::from(&v[r]));
            row
        })
        .collect();
    let mut row = 0;
    for c in 0..k {
        let Some(p) = (row..dim).find(|&i| a[i][c] != 0) else {
            return None;
        };
        a.swap(p, row);
        let inv = Rational::from(a[row][c].recip_ref());
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..dim {
            if i != row && a[i][c] != 0 {
                let f = a[i][c].clone();
                for j in 0..=k {
                    let sub = Rational::from(&f * &a[row][j]);
                    a[i][j] -= sub;
                }
            }
        }
        row += 1;
    }
    // inconsistent rows leave a nonzero right-hand side
    if a[row..].iter().any(|r| r[k] != 0) {
        return None;
    }
    let coeffs: Vec<Rational> = (0..k).map(|i| a[i][k].clone()).collect();
    if coeffs.iter().any(|c| *c.denom() != 1) {
        return None;
    }
    Some(coeffs.into_iter().map(|c| c.into_numer_denom().0).collect())
}
