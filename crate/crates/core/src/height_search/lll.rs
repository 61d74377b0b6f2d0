//! Integral LLL: all Gram–Schmidt data kept as exact integers d_i and
//! λ_{i,j} = d_j μ_{i,j}.

use rug::ops::DivRounding;
use rug::{Integer, Rational};

use super::lattice::LatticeBasis;
use crate::error::{Error, Result};

struct State {
    b: Vec<Vec<Integer>>,
    /// d[0] = 1, d[i] = Gram determinant of the first i rows
    d: Vec<Integer>,
    /// lambda[i][j] for j < i, 0-based rows
    lambda: Vec<Vec<Integer>>,
}

fn dot(a: &[Integer], b: &[Integer]) -> Integer {
    a.iter().zip(b).map(|(x, y)| Integer::from(x * y)).sum()
}

impl State {
    // Rows are 0-based; d is shifted so that d[i + 1] belongs to row i.
    fn red(&mut self, k: usize, l: usize) {
        let dl = &self.d[l + 1];
        let two_lambda = Integer::from(&self.lambda[k][l] << 1);
        if Integer::from(two_lambda.abs_ref()) <= *dl {
            return;
        }
        // nearest integer to λ/d_l
        let q = (two_lambda + dl).div_floor(Integer::from(dl << 1));
        let (head, tail) = self.b.split_at_mut(k);
        for (x, y) in tail[0].iter_mut().zip(&head[l]) {
            *x -= Integer::from(&q * y);
        }
        self.lambda[k][l] -= Integer::from(&q * &self.d[l + 1]);
        for i in 0..l {
            let t = Integer::from(&q * &self.lambda[l][i]);
            self.lambda[k][i] -= t;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = std::mem::take(&mut self.lambda[k][j]);
            self.lambda[k][j] = std::mem::replace(&mut self.lambda[k - 1][j], t);
        }
        let lam = self.lambda[k][k - 1].clone();
        let (dk2, dk1, dk) = (&self.d[k - 1], &self.d[k], &self.d[k + 1]);
        let bb = (Integer::from(dk2 * dk) + Integer::from(lam.square_ref())).div_exact(dk1);
        for i in k + 1..=kmax {
            let t = self.lambda[i][k].clone();
            let new_ik = (Integer::from(dk * &self.lambda[i][k - 1]) - Integer::from(&lam * &t)).div_exact(dk1);
            let new_ik1 = (Integer::from(&bb * &t) + Integer::from(&lam * &new_ik)).div_exact(dk);
            self.lambda[i][k] = new_ik;
            self.lambda[i][k - 1] = new_ik1;
        }
        self.d[k] = bb;
    }
}

/// LLL reduction with Lovász parameter δ ∈ (1/4, 1].
pub fn lll_reduce(basis: &LatticeBasis, delta: &Rational) -> Result<LatticeBasis> {
    if *delta <= Rational::from((1, 4)) || *delta > 1 {
        return Err(Error::InvalidParams("δ must lie in (1/4, 1]".into()));
    }
    let n = basis.dim();
    if n == 0 {
        return Ok(basis.clone());
    }
    let (dp, dq) = (delta.numer().clone(), delta.denom().clone());
    let mut st = State { b: basis.rows.clone(), d: vec![Integer::new(); n + 1], lambda: vec![vec![Integer::new(); n]; n] };
    st.d[0] = Integer::from(1);
    st.d[1] = dot(&st.b[0], &st.b[0]);
    if st.d[1] == 0 {
        return Err(Error::DependentRows);
    }
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&st.b[k], &st.b[j]);
                for i in 0..j {
                    u = (Integer::from(&st.d[i + 1] * &u) - Integer::from(&st.lambda[k][i] * &st.lambda[j][i]))
                        .div_exact(&st.d[i]);
                }
                if j < k {
                    st.lambda[k][j] = u;
                } else {
                    if u == 0 {
                        return Err(Error::DependentRows);
                    }
                    st.d[k + 1] = u;
                }
            }
        }
        loop {
            st.red(k, k - 1);
            // q d_k d_{k-2} < p d_{k-1}² - q λ²
            let lhs = Integer::from(&dq * &st.d[k + 1]) * &st.d[k - 1];
            let rhs = Integer::from(st.d[k].square_ref()) * &dp - Integer::from(st.lambda[k][k - 1].square_ref()) * &dq;
            if lhs < rhs {
                st.swap(k, kmax);
                if k > 1 {
                    k -= 1;
                }
            } else {
                break;
            }
        }
        for l in (0..k - 1).rev() {
            st.red(k, l);
        }
        k += 1;
    }
    Ok(LatticeBasis::new(st.b))
}

pub fn lll_reduce_default(basis: &LatticeBasis) -> Result<LatticeBasis> {
    lll_reduce(basis, &Rational::from((3, 4)))
}

/// Checks |μ_{i,j}| ≤ 1/2 and the Lovász condition with exact rationals.
pub fn is_lll_reduced(basis: &LatticeBasis, delta: &Rational) -> bool {
    let n = basis.dim();
    let rows: Vec<Vec<Rational>> = basis.rows.iter().map(|r| r.iter().map(Rational::from).collect()).collect();
    let rdot = |a: &[Rational], b: &[Rational]| -> Rational { a.iter().zip(b).map(|(x, y)| Rational::from(x * y)).sum() };
    let mut star: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut bn: Vec<Rational> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rational::new(); n]; n];
    let half = Rational::from((1, 2));
    for i in 0..n {
        let mut v = rows[i].clone();
        for j in 0..i {
            if bn[j] == 0 {
                return false;
            }
            mu[i][j] = rdot(&rows[i], &star[j]) / bn[j].clone();
            if Rational::from(mu[i][j].abs_ref()) > half {
                return false;
            }
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= Rational::from(&mu[i][j] * y);
            }
        }
        bn.push(rdot(&v, &v));
        star.push(v);
        if i > 0 {
            let bound = (delta.clone() - Rational::from(mu[i][i - 1].square_ref())) * &bn[i - 1];
            if bn[i] < bound {
                return false;
            }
        }
    }
    true
}
