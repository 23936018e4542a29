//! Parameter sets (t^{1/2}, t₀^{1/2}, t_k^{1/2}) and the boundary scalars
//! that fix the normalization of X₁ and Y₁.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Powers of t^{1/2} checked when ruling out roots of unity.
pub const ROOT_OF_UNITY_BOUND: i64 = 64;

/// Largest |exponent| tried when recovering markings from parameters.
const MARKING_SEARCH: i64 = 256;

/// Parameters of the algebra.
///
/// `ua` and `ub` are square roots of −a₂ and −b₂. With them
/// a₁ = t_k·ua², a₂ = −ua², b₁ = t₀·ub², b₂ = −ub², so that
/// X₁ = t_k^{1/2}·ua²·W₁T₀⁻¹ and Y₁ = t₀^{1/2}·ub²·T₀.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeParams {
    pub t_half: Scalar,
    pub t0_half: Scalar,
    pub tk_half: Scalar,
    pub ua: Scalar,
    pub ub: Scalar,
    /// Doubled r₁ with t^{r₁} = t_k^{1/2}t₀^{−1/2}, when that is a power of t^{1/2}.
    pub r1: Option<i64>,
    /// Doubled r₂ with −t^{r₂} = t_k^{1/2}t₀^{1/2}, when that is a power of t^{1/2}.
    pub r2: Option<i64>,
}

impl Default for HeckeParams {
    /// t^{1/2} = 2, t₀^{1/2} = 3, t_k^{1/2} = 5.
    fn default() -> Self {
        Self::new(Scalar::int(2), Scalar::int(3), Scalar::int(5))
    }
}

/// The smallest-magnitude n with base^n = target, if any in range.
fn discrete_log(base: &Scalar, target: &Scalar) -> Option<i64> {
    if base.is_zero() || target.is_zero() {
        return None;
    }
    let binv = base.inverse().ok()?;
    let (mut up, mut down) = (Scalar::one(), Scalar::one());
    for n in 0..=MARKING_SEARCH {
        if &up == target {
            return Some(n);
        }
        if &down == target {
            return Some(-n);
        }
        up = &up * base;
        down = &down * &binv;
    }
    None
}

impl HeckeParams {
    /// Direct parameters with ua = ub = 1. Markings are recovered when the
    /// parameters happen to put them on the half-integer lattice.
    pub fn new(t_half: Scalar, t0_half: Scalar, tk_half: Scalar) -> Self {
        let mut p = HeckeParams {
            t_half,
            t0_half,
            tk_half,
            ua: Scalar::one(),
            ub: Scalar::one(),
            r1: None,
            r2: None,
        };
        p.r1 = p
            .t0_half
            .inverse()
            .ok()
            .and_then(|i| discrete_log(&p.t_half, &(&p.tk_half * &i)));
        p.r2 = discrete_log(&p.t_half, &-(&p.tk_half * &p.t0_half));
        p
    }

    /// Parameters whose markings sit at the doubled values r1, r2
    /// (r1 + r2 must be even): t_k^{1/2} = −i·t^{(r₁+r₂)/2 /2},
    /// t₀^{1/2} = −i·t^{(r₂−r₁)/2 /2} in doubled units.
    pub fn marked(t_half: Scalar, r1: i64, r2: i64) -> Result<Self> {
        if (r1 + r2) % 2 != 0 {
            return Err(Error::InvalidContent(format!(
                "markings r1 = {r1}/2, r2 = {r2}/2 need r1 + r2 even in doubled units"
            )));
        }
        let mi = -Scalar::i();
        let tk_half = &mi * &t_half.pow((r1 + r2) / 2)?;
        let t0_half = &mi * &t_half.pow((r2 - r1) / 2)?;
        let mut p = HeckeParams::new(t_half, t0_half, tk_half);
        p.r1 = Some(r1);
        p.r2 = Some(r2);
        Ok(p)
    }

    /// Parameters attached to M = L(a^c), N = L(b^d) at t^{1/2} = q:
    /// a₁ = q^{2a}, a₂ = q^{−2c}, b₁ = q^{2b}, b₂ = q^{−2d}.
    pub fn from_rect(q: Scalar, a: i64, c: i64, b: i64, d: i64) -> Result<Self> {
        let mut p = Self::marked(q.clone(), (a + c) - (b + d), a + c + b + d)?;
        p.ua = &Scalar::i() * &q.pow(-c)?;
        p.ub = &Scalar::i() * &q.pow(-d)?;
        Ok(p)
    }

    pub fn t(&self) -> Scalar {
        &self.t_half * &self.t_half
    }
    pub fn t0(&self) -> Scalar {
        &self.t0_half * &self.t0_half
    }
    pub fn tk(&self) -> Scalar {
        &self.tk_half * &self.tk_half
    }
    /// a₁^{1/2}(−a₂)^{1/2}.
    pub fn sa(&self) -> Scalar {
        &self.tk_half * &(&self.ua * &self.ua)
    }
    /// b₁^{1/2}(−b₂)^{1/2}.
    pub fn sb(&self) -> Scalar {
        &self.t0_half * &(&self.ub * &self.ub)
    }
    pub fn a1(&self) -> Scalar {
        &self.tk() * &(&self.ua * &self.ua)
    }
    pub fn a2(&self) -> Scalar {
        -(&self.ua * &self.ua)
    }
    pub fn b1(&self) -> Scalar {
        &self.t0() * &(&self.ub * &self.ub)
    }
    pub fn b2(&self) -> Scalar {
        -(&self.ub * &self.ub)
    }

    /// γ = −t^{x/2} for a doubled exponent x, i.e. −(t^{1/2})^x.
    pub fn gamma(&self, doubled: i64) -> Result<Scalar> {
        Ok(-self.t_half.pow(doubled)?)
    }

    /// −t^{r₁} = −t_k^{1/2}t₀^{−1/2}.
    pub fn gamma_r1(&self) -> Result<Scalar> {
        Ok(-(&self.tk_half * &self.t0_half.inverse()?))
    }

    /// −t^{r₂} = t_k^{1/2}t₀^{1/2}.
    pub fn gamma_r2(&self) -> Scalar {
        &self.tk_half * &self.t0_half
    }

    /// The four values of γ₁ putting ε₁ in P(γ).
    pub fn boundary_values(&self) -> Result<[Scalar; 4]> {
        let t0i = self.t0_half.inverse()?;
        let tki = self.tk_half.inverse()?;
        Ok([
            &self.t0_half * &self.tk_half,
            -(&t0i * &self.tk_half),
            -(&self.t0_half * &tki),
            &t0i * &tki,
        ])
    }

    /// Checks invertibility, the exclusions on t₀^{1/2}t_k^{1/2} and
    /// −t₀^{−1/2}t_k^{1/2}, and that t^{1/2} is not a small root of unity.
    pub fn check_generic(&self) -> Result<()> {
        for (name, v) in [
            ("t_half", &self.t_half),
            ("t0_half", &self.t0_half),
            ("tk_half", &self.tk_half),
            ("ua", &self.ua),
            ("ub", &self.ub),
        ] {
            if v.is_zero() {
                return Err(Error::GenericityViolated(format!("{name} = 0")));
            }
        }
        let th = &self.t_half;
        let thi = th.inverse()?;
        let t = self.t();
        let ti = t.inverse()?;
        let mut bad = Vec::new();
        for v in [
            Scalar::one(),
            th.clone(),
            thi.clone(),
            t.clone(),
            ti.clone(),
        ] {
            bad.push(-v.clone());
            bad.push(v);
        }
        let x = self.gamma_r2();
        let y = -(&self.t0_half.inverse()? * &self.tk_half);
        for (name, v) in [("t0^1/2 tk^1/2", &x), ("-t0^-1/2 tk^1/2", &y)] {
            if bad.contains(v) {
                return Err(Error::GenericityViolated(format!(
                    "{name} = {v} is excluded"
                )));
            }
        }
        if x == y || x == y.inverse()? {
            return Err(Error::GenericityViolated(
                "t0^1/2 tk^1/2 equals (-t0^-1/2 tk^1/2)^{±1}".into(),
            ));
        }
        let mut p = Scalar::one();
        for n in 1..=ROOT_OF_UNITY_BOUND {
            p = &p * th;
            if p.is_one() {
                return Err(Error::GenericityViolated(format!(
                    "t^1/2 is a root of unity of order {n}"
                )));
            }
        }
        Ok(())
    }
}

/// Parameter values embedded in a field, with the derived constants used
/// by the module code.
#[derive(Clone, Debug)]
pub struct FieldParams<F> {
    pub t_half: F,
    pub t_half_inv: F,
    pub t0_half: F,
    pub t0_half_inv: F,
    pub tk_half: F,
    pub tk_half_inv: F,
    pub sa: F,
    pub sb: F,
    pub a1: F,
    pub a2: F,
    pub b1: F,
    pub b2: F,
}

impl<F: Field> FieldParams<F> {
    pub fn new(p: &HeckeParams) -> Result<Self> {
        let e = |s: &Scalar| F::from_scalar(s);
        Ok(FieldParams {
            t_half: e(&p.t_half),
            t_half_inv: e(&p.t_half.inverse()?),
            t0_half: e(&p.t0_half),
            t0_half_inv: e(&p.t0_half.inverse()?),
            tk_half: e(&p.tk_half),
            tk_half_inv: e(&p.tk_half.inverse()?),
            sa: e(&p.sa()),
            sb: e(&p.sb()),
            a1: e(&p.a1()),
            a2: e(&p.a2()),
            b1: e(&p.b1()),
            b2: e(&p.b2()),
        })
    }

    /// t^{1/2} − t^{−1/2}.
    pub fn dt(&self) -> F {
        self.t_half.clone() - self.t_half_inv.clone()
    }
    /// t₀^{1/2} − t₀^{−1/2}.
    pub fn dt0(&self) -> F {
        self.t0_half.clone() - self.t0_half_inv.clone()
    }
    /// t_k^{1/2} − t_k^{−1/2}.
    pub fn dtk(&self) -> F {
        self.tk_half.clone() - self.tk_half_inv.clone()
    }
    /// (upper, lower) eigenvalues of T₀ (i = 0) or Tᵢ.
    pub fn quadratic_roots(&self, i: usize) -> (F, F) {
        if i == 0 {
            (self.t0_half.clone(), -self.t0_half_inv.clone())
        } else {
            (self.t_half.clone(), -self.t_half_inv.clone())
        }
    }
}
