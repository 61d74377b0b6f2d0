use crate::numerics::{BigComplex, BigFloat};

/// Second-order jet of an analytic function at a point: (f, f′, f″).
#[derive(Debug, Clone)]
pub struct Jet {
    pub v: BigComplex,
    pub d1: BigComplex,
    pub d2: BigComplex,
}

impl Jet {
    pub fn zero(prec: u32) -> Self {
        Self { v: BigComplex::zero(prec), d1: BigComplex::zero(prec), d2: BigComplex::zero(prec) }
    }

    pub fn constant(c: BigComplex) -> Self {
        let p = c.prec();
        Self { v: c, d1: BigComplex::zero(p), d2: BigComplex::zero(p) }
    }

    /// The identity function shifted: s + a.
    pub fn variable(s: &BigComplex, shift: i64) -> Self {
        let p = s.prec();
        let v = s.add_real(&BigFloat::with_val(p, shift));
        Self { v, d1: BigComplex::one(p), d2: BigComplex::zero(p) }
    }

    /// b^{-s} at s given ln b and the value z = b^{-s}.
    pub fn neg_power(z: BigComplex, ln_base: &BigFloat) -> Self {
        let d1 = -z.scale(ln_base);
        let d2 = -d1.scale(ln_base);
        Self { v: z, d1, d2 }
    }

    pub fn add_assign(&mut self, o: &Jet) {
        self.v = &self.v + &o.v;
        self.d1 = &self.d1 + &o.d1;
        self.d2 = &self.d2 + &o.d2;
    }

    pub fn sub_assign(&mut self, o: &Jet) {
        self.v = &self.v - &o.v;
        self.d1 = &self.d1 - &o.d1;
        self.d2 = &self.d2 - &o.d2;
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let v = &self.v * &o.v;
        let d1 = &(&self.d1 * &o.v) + &(&self.v * &o.d1);
        let cross = (&self.d1 * &o.d1).scale_i(2);
        let d2 = &(&(&self.d2 * &o.v) + &cross) + &(&self.v * &o.d2);
        Jet { v, d1, d2 }
    }

    pub fn scale(&self, k: &BigFloat) -> Jet {
        Jet { v: self.v.scale(k), d1: self.d1.scale(k), d2: self.d2.scale(k) }
    }

    pub fn scale_complex(&self, k: &BigComplex) -> Jet {
        Jet { v: &self.v * k, d1: &self.d1 * k, d2: &self.d2 * k }
    }

    /// 1/f.
    pub fn recip(&self) -> Jet {
        let r = self.v.recip();
        let r2 = r.square();
        let d1 = -(&self.d1 * &r2);
        // (1/f)'' = 2 f'^2 / f^3 - f'' / f^2
        let r3 = &r2 * &r;
        let a = (&self.d1.square() * &r3).scale_i(2);
        let d2 = &a - &(&self.d2 * &r2);
        Jet { v: r, d1, d2 }
    }

    /// e^f.
    pub fn exp(&self) -> Jet {
        let e = self.v.exp();
        let d1 = &e * &self.d1;
        let inner = &self.d1.square() + &self.d2;
        let d2 = &e * &inner;
        Jet { v: e, d1, d2 }
    }

    pub fn order(&self, k: usize) -> &BigComplex {
        match k {
            0 => &self.v,
            1 => &self.d1,
            2 => &self.d2,
            _ => panic!("jets carry derivatives up to order 2"),
        }
    }
}
