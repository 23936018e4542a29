//! Rank two: representatives of the central characters with their (Z, P)
//! data, and the four-dimensional induced modules at the non-Kato
//! characters.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::laurent::Laurent;
use crate::hecke::matrix::SMat;
use crate::hecke::module::{z_p_of_gamma, Module};
use crate::hecke::params::{FieldParams, HeckeParams};
use crate::hecke::structure::GenericModule;
use crate::scalar::{Field, Scalar};
use crate::weyl::Root;

/// Stand-ins for the free coordinates c₁, c₂ (as values −t^{c}).
const GENERIC_C1: (i64, i64) = (-17, 3);
const GENERIC_C2: (i64, i64) = (-31, 7);

/// The named points a rank-two coordinate can sit on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Zero,
    Half,
    R1,
    R2,
    C1,
    C2,
}

/// A symbolic coordinate ±base + shift, standing for γ = −t^{coordinate}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coord {
    pub negated: bool,
    pub base: Base,
    pub shift: i64,
}

impl Coord {
    pub const fn of(base: Base) -> Self {
        Coord {
            negated: false,
            base,
            shift: 0,
        }
    }

    pub const fn shifted(base: Base, shift: i64) -> Self {
        Coord {
            negated: false,
            base,
            shift,
        }
    }

    pub const fn neg_shifted(base: Base, shift: i64) -> Self {
        Coord {
            negated: true,
            base,
            shift,
        }
    }

    pub fn negate(self) -> Self {
        match self.base {
            Base::Zero => Coord {
                shift: -self.shift,
                ..self
            },
            _ => Coord {
                negated: !self.negated,
                base: self.base,
                shift: -self.shift,
            },
        }
    }

    /// −t^{coordinate}.
    pub fn gamma(&self, params: &HeckeParams) -> Result<Scalar> {
        let base = match self.base {
            Base::Zero => -Scalar::one(),
            Base::Half => -params.t_half.clone(),
            Base::R1 => params.gamma_r1()?,
            Base::R2 => params.gamma_r2(),
            Base::C1 => Scalar::frac(GENERIC_C1.0, GENERIC_C1.1),
            Base::C2 => Scalar::frac(GENERIC_C2.0, GENERIC_C2.1),
        };
        let base = if self.negated { base.inverse()? } else { base };
        Ok(base * params.t().pow(self.shift)?)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.base {
            Base::Zero => return write!(f, "{}", self.shift),
            Base::Half => "1/2",
            Base::R1 => "r1",
            Base::R2 => "r2",
            Base::C1 => "c1",
            Base::C2 => "c2",
        };
        let sign = if self.negated { "-" } else { "" };
        match self.shift {
            0 => write!(f, "{sign}{name}"),
            s if s > 0 => write!(f, "{sign}{name}+{s}"),
            s => write!(f, "{sign}{name}{s}"),
        }
    }
}

fn pair_label(c: &[Coord; 2]) -> String {
    format!("({},{})", c[0], c[1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rank2Tag {
    Regular,
    Nonregular,
    NonKato,
}

/// One representative central character with its (Z, P).
#[derive(Clone, Debug, Serialize)]
pub struct Rank2Character {
    pub label: String,
    pub class: Rank2Tag,
    pub gamma: Vec<Scalar>,
    #[serde(rename = "Z")]
    pub z: Vec<Root>,
    #[serde(rename = "P")]
    pub p: Vec<Root>,
}

/// The regular representatives (Z = ∅), as coordinates c.
pub fn regular_points() -> Vec<[Coord; 2]> {
    use Base::*;
    vec![
        [Coord::of(R1), Coord::of(R2)],
        [Coord::shifted(R1, -1), Coord::of(R1)],
        [Coord::shifted(R2, -1), Coord::of(R2)],
        [Coord::of(R1), Coord::shifted(R1, 1)],
        [Coord::of(R2), Coord::shifted(R2, 1)],
        [Coord::of(C1), Coord::shifted(C1, 1)],
        [Coord::of(C1), Coord::of(R2)],
        [Coord::of(C1), Coord::of(R1)],
        [Coord::of(R1), Coord::of(C2)],
        [Coord::of(R2), Coord::of(C2)],
        [Coord::of(C1), Coord::of(C2)],
        [Coord::of(C1), Coord::neg_shifted(C1, 1)],
    ]
}

/// The nonregular representatives (Z ≠ ∅), as coordinates c.
pub fn nonregular_points() -> Vec<[Coord; 2]> {
    use Base::*;
    vec![
        [Coord::of(Zero), Coord::of(R2)],
        [Coord::of(Zero), Coord::of(C2)],
        [Coord::of(Zero), Coord::of(R1)],
        [Coord::of(Half), Coord::of(Half)],
        [Coord::of(R1), Coord::of(R1)],
        [Coord::of(C1), Coord::of(C1)],
        [Coord::of(R2), Coord::of(R2)],
        [Coord::of(Zero), Coord::of(Zero)],
        [Coord::of(Zero), Coord::shifted(Zero, 1)],
    ]
}

/// The representatives with Z ≠ ∅ and P ≠ ∅, given directly as γ.
fn non_kato_rows(params: &HeckeParams) -> Result<Vec<(String, [Scalar; 2])>> {
    let th = params.t_half.clone();
    let t = params.t();
    let x = params.t0_half.clone() * params.tk_half.clone();
    let y = -params.t0_half.inverse()? * params.tk_half.clone();
    let one = Scalar::one();
    let m1 = -one.clone();
    Ok(vec![
        ("(t^1/2,t^1/2)".into(), [th.clone(), th.clone()]),
        ("(-t^1/2,-t^1/2)".into(), [-th.clone(), -th]),
        ("(t0^1/2tk^1/2,t0^1/2tk^1/2)".into(), [x.clone(), x.clone()]),
        (
            "(-t0^-1/2tk^1/2,-t0^-1/2tk^1/2)".into(),
            [y.clone(), y.clone()],
        ),
        ("(1,t)".into(), [one.clone(), t.clone()]),
        ("(-1,-t)".into(), [m1.clone(), -t]),
        ("(1,t0^1/2tk^1/2)".into(), [one.clone(), x.clone()]),
        ("(-1,t0^1/2tk^1/2)".into(), [m1.clone(), x]),
        ("(1,-t0^-1/2tk^1/2)".into(), [one, y.clone()]),
        ("(-1,-t0^-1/2tk^1/2)".into(), [m1, y]),
    ])
}

fn character(
    label: String,
    class: Rank2Tag,
    gamma: Vec<Scalar>,
    params: &HeckeParams,
) -> Result<Rank2Character> {
    let (z, p) = z_p_of_gamma(&gamma, params)?;
    Ok(Rank2Character {
        label,
        class,
        gamma,
        z,
        p,
    })
}

/// All rank-two representatives: 12 regular, 9 nonregular, then the
/// non-Kato rows.
pub fn rank2_characters(params: &HeckeParams) -> Result<Vec<Rank2Character>> {
    params.check_generic()?;
    let mut out = Vec::new();
    for (class, pts) in [
        (Rank2Tag::Regular, regular_points()),
        (Rank2Tag::Nonregular, nonregular_points()),
    ] {
        for c in pts {
            let gamma = vec![c[0].gamma(params)?, c[1].gamma(params)?];
            out.push(character(pair_label(&c), class, gamma, params)?);
        }
    }
    for (label, g) in non_kato_rows(params)? {
        out.push(character(label, Rank2Tag::NonKato, g.to_vec(), params)?);
    }
    Ok(out)
}

/// The four families of non-Kato modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank2Family {
    /// c = (0, rᵢ).
    ZeroR(u8),
    /// c = (1/2, 1/2).
    HalfHalf,
    /// c = (rᵢ, rᵢ).
    RR(u8),
    /// c = (0, 1).
    ZeroOne,
}

/// A family together with the sign ±.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rank2Class {
    pub family: Rank2Family,
    pub plus: bool,
}

impl Rank2Class {
    pub fn all() -> Vec<Rank2Class> {
        let fams = [
            Rank2Family::ZeroR(1),
            Rank2Family::ZeroR(2),
            Rank2Family::HalfHalf,
            Rank2Family::RR(1),
            Rank2Family::RR(2),
            Rank2Family::ZeroOne,
        ];
        fams.iter()
            .flat_map(|&family| [true, false].map(|plus| Rank2Class { family, plus }))
            .collect()
    }

    fn r(i: u8) -> Base {
        if i == 1 {
            Base::R1
        } else {
            Base::R2
        }
    }

    /// The index j of the parabolic subalgebra H_{j} (generated by T_j and
    /// the W's) and the weight of the inducing character.
    pub fn inducing_data(&self) -> (usize, [Coord; 2]) {
        let zero = Coord::of(Base::Zero);
        let (j, c) = match self.family {
            Rank2Family::ZeroR(i) => (0, [Coord::of(Self::r(i)), zero]),
            Rank2Family::HalfHalf => (1, [Coord::of(Base::Half).negate(), Coord::of(Base::Half)]),
            Rank2Family::RR(i) => (0, [Coord::of(Self::r(i)), Coord::of(Self::r(i)).negate()]),
            Rank2Family::ZeroOne => (1, [Coord::shifted(Base::Zero, -1), zero]),
        };
        if self.plus {
            (j, c)
        } else {
            (j, [c[0].negate(), c[1].negate()])
        }
    }

    /// The central character c, as a label.
    pub fn center_label(&self) -> &'static str {
        match self.family {
            Rank2Family::ZeroR(1) => "(0,r1)",
            Rank2Family::ZeroR(_) => "(0,r2)",
            Rank2Family::HalfHalf => "(1/2,1/2)",
            Rank2Family::RR(1) => "(r1,r1)",
            Rank2Family::RR(_) => "(r2,r2)",
            Rank2Family::ZeroOne => "(0,1)",
        }
    }
}

impl fmt::Display for Rank2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "L{}{}",
            if self.plus { "+" } else { "-" },
            self.center_label()
        )
    }
}

impl FromStr for Rank2Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace('½', "1/2");
        let rest = t.strip_prefix('L').unwrap_or(&t);
        let (plus, center) = if let Some(r) = rest.strip_prefix('+') {
            (true, r)
        } else if let Some(r) = rest.strip_prefix('-') {
            (false, r)
        } else {
            return Err(Error::UnknownClass(s.to_string()));
        };
        let family = match center {
            "(0,r1)" => Rank2Family::ZeroR(1),
            "(0,r2)" => Rank2Family::ZeroR(2),
            "(1/2,1/2)" => Rank2Family::HalfHalf,
            "(r1,r1)" => Rank2Family::RR(1),
            "(r2,r2)" => Rank2Family::RR(2),
            "(0,1)" => Rank2Family::ZeroOne,
            _ => return Err(Error::UnknownClass(s.to_string())),
        };
        Ok(Rank2Class { family, plus })
    }
}

/// The eight images of (c₁, c₂) under W₀.
pub fn orbit(c: [Coord; 2]) -> Vec<[Coord; 2]> {
    let mut out: Vec<[Coord; 2]> = Vec::new();
    for swap in [false, true] {
        for n1 in [false, true] {
            for n2 in [false, true] {
                let (a, b) = if swap { (c[1], c[0]) } else { (c[0], c[1]) };
                let p = [
                    if n1 { a.negate() } else { a },
                    if n2 { b.negate() } else { b },
                ];
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Coset words for Ind from H_{j}: (1, T₁, T₀T₁, T₁T₀T₁) for j = 0 and
/// (1, T₀, T₁T₀, T₀T₁T₀) for j = 1, leftmost letter first.
fn coset_words(j: usize) -> Vec<Vec<usize>> {
    let o = 1 - j;
    vec![vec![], vec![o], vec![j, o], vec![o, j, o]]
}

fn word_label(w: &[usize]) -> String {
    let s: String = w.iter().map(|i| format!("T{i}")).collect();
    format!("{s}v")
}

struct Induced<'a, F> {
    words: Vec<Vec<usize>>,
    t: [SMat<F>; 2],
    point: [F; 3],
    fp: &'a FieldParams<F>,
}

impl<F: Field> Induced<'_, F> {
    /// f · T_{word} v, pushing f to the right with
    /// W^λ Tᵢ = Tᵢ W^{sᵢλ} + Qᵢ·Dᵢ(W^λ).
    fn push(&self, f: &Laurent<F>, word: &[usize]) -> Result<Vec<F>> {
        let n = self.words.len();
        let Some((&i, rest)) = word.split_first() else {
            let mut v = vec![F::zero(); n];
            v[0] = f.eval(&self.point)?;
            return Ok(v);
        };
        let moved = self.t[i].apply(&self.push(&f.reflect(i), rest)?);
        let q = if i == 0 {
            Laurent::constant(2, self.fp.dt0()).add(&Laurent::var(2, 1, -1).scale(&self.fp.dtk()))
        } else {
            Laurent::constant(2, self.fp.dt())
        };
        let tail = self.push(&q.mul(&f.divided_difference(i)), rest)?;
        Ok(moved.iter().zip(tail).map(|(a, b)| a.clone() + b).collect())
    }
}

/// The scalar T_j acts by on a one-dimensional H_{j}-module of weight
/// (g₁, g₂), forced by the cross relation.
fn forced_t_scalar<F: Field>(fp: &FieldParams<F>, j: usize, g: &[F; 2]) -> Result<F> {
    let val = if j == 0 {
        // τ(g − g⁻¹) = Δt₀·g + Δt_k
        (fp.dt0() * g[0].clone() + fp.dtk()).checked_div(&(g[0].clone() - g[0].inv()?))?
    } else {
        // τ(g₁ − g₂) = −Δt·g₂
        (-(fp.dt() * g[1].clone())).checked_div(&(g[0].clone() - g[1].clone()))?
    };
    let (hi, lo) = fp.quadratic_roots(j);
    if val.close(&hi) || val.close(&lo) {
        Ok(val)
    } else {
        Err(Error::GenericityViolated(format!(
            "no one-dimensional H_{{{j}}}-module of this weight"
        )))
    }
}

/// Ind_{H_{j}}^{H₂} of the character of the given class, on which W₀ acts by z.
pub fn rank2_induced<F: Field>(
    class: Rank2Class,
    params: &HeckeParams,
    z: &Scalar,
) -> Result<GenericModule<F>> {
    params.check_generic()?;
    let fp = FieldParams::<F>::new(params)?;
    let (j, c) = class.inducing_data();
    let g = [
        F::from_scalar(&c[0].gamma(params)?),
        F::from_scalar(&c[1].gamma(params)?),
    ];
    let chi = forced_t_scalar(&fp, j, &g)?;
    let words = coset_words(j);
    let n = words.len();
    let index = |w: &[usize]| words.iter().position(|u| u.as_slice() == w);
    let mut t = [SMat::zeros(n), SMat::zeros(n)];
    for (i, ti) in t.iter_mut().enumerate() {
        let dt = if i == 0 { fp.dt0() } else { fp.dt() };
        for (a, w) in words.iter().enumerate() {
            let longer: Vec<usize> = std::iter::once(i).chain(w.iter().copied()).collect();
            if let Some(b) = index(&longer) {
                ti.set(b, a, F::one());
            } else if w.first() == Some(&i) {
                // Tᵢ² = Δ·Tᵢ + 1
                ti.set(a, a, dt.clone());
                ti.set(
                    index(&w[1..]).expect("coset words closed under prefixes"),
                    a,
                    F::one(),
                );
            } else {
                // Tᵢ T_w v = T_w T_j v by the braid relation
                ti.set(a, a, chi.clone());
            }
        }
    }
    let zf = F::from_scalar(z);
    let ind = Induced {
        words: words.clone(),
        t: t.clone(),
        point: [zf.clone(), g[0].clone(), g[1].clone()],
        fp: &fp,
    };
    let mut w = Vec::new();
    for var in 1..=2 {
        let f = Laurent::var(2, var, 1);
        let cols: Vec<Vec<F>> = words
            .iter()
            .map(|u| ind.push(&f, u))
            .collect::<Result<_>>()?;
        w.push(SMat::from_entries(
            n,
            cols.iter()
                .enumerate()
                .flat_map(|(a, col)| col.iter().enumerate().map(move |(b, x)| (b, a, x.clone()))),
        ));
    }
    let p = w[0].mul(&w[1]).inverse()?.scale(&zf);
    let labels = words.iter().map(|u| word_label(u)).collect();
    let [t0, t1] = t;
    let module = Module::assemble(2, labels, zf, p, w, vec![t0, t1], &fp)?;
    let candidates: Vec<(String, Vec<F>)> = orbit(c)
        .into_iter()
        .map(|p| {
            let g = vec![
                F::from_scalar(&p[0].gamma(params)?),
                F::from_scalar(&p[1].gamma(params)?),
            ];
            Ok((pair_label(&p), g))
        })
        .collect::<Result<_>>()?;
    GenericModule::new(module, &candidates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::relations::verify_relations;
    use crate::hecke::structure::is_irreducible;
    use crate::regions::{p_set, z_set, ContentVector};

    fn roots(s: &[&str]) -> Vec<Root> {
        let mut v: Vec<Root> = s.iter().map(|x| x.parse().unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn non_kato_table() {
        let p = HeckeParams::default();
        let chars = rank2_characters(&p).unwrap();
        let nk: Vec<&Rank2Character> = chars
            .iter()
            .filter(|c| c.class == Rank2Tag::NonKato)
            .collect();
        assert_eq!(nk.len(), 10);
        let rows: [(&[&str], &[&str]); 4] = [
            (&["e2-e1"], &["e2+e1"]),
            (&["e2-e1"], &["e1", "e2"]),
            (&["e1"], &["e2-e1", "e2+e1"]),
            (&["e1"], &["e2"]),
        ];
        let row_of = [0, 0, 1, 1, 2, 2, 3, 3, 3, 3];
        for (c, &r) in nk.iter().zip(&row_of) {
            assert_eq!(c.z, roots(rows[r].0), "{}", c.label);
            assert_eq!(c.p, roots(rows[r].1), "{}", c.label);
        }
    }

    #[test]
    fn trivial_and_sign_points() {
        let p = HeckeParams::default();
        let one = Scalar::one();
        let (z, pp) = z_p_of_gamma(&[one.clone(), one.clone()], &p).unwrap();
        assert_eq!(z, roots(&["e1", "e2", "e2-e1", "e2+e1"]));
        assert!(pp.is_empty());
        let (z, pp) = z_p_of_gamma(&[one.clone(), -one], &p).unwrap();
        assert_eq!(z, roots(&["e1", "e2"]));
        assert!(pp.is_empty());
    }

    #[test]
    fn symbolic_points_agree_with_contents() {
        // numeric stand-ins on the content side: integral points use markings
        // r = (2, 5) and c = (7, 11); points at 1/2 use r = (5/2, 11/2) and
        // c = (31/2, 45/2). The content route must give the γ route's (Z, P).
        let pts: Vec<(Rank2Tag, [Coord; 2])> = regular_points()
            .into_iter()
            .map(|c| (Rank2Tag::Regular, c))
            .chain(
                nonregular_points()
                    .into_iter()
                    .map(|c| (Rank2Tag::Nonregular, c)),
            )
            .collect();
        for (tag, c) in pts {
            let half = c.iter().any(|x| x.base == Base::Half);
            let (r1, r2, c1, c2) = if half {
                (5, 11, 31, 45)
            } else {
                (4, 10, 14, 22)
            };
            let p = HeckeParams::marked(Scalar::int(2), r1, r2).unwrap();
            let doubled = |x: &Coord| -> i64 {
                let b = match x.base {
                    Base::Zero => 0,
                    Base::Half => 1,
                    Base::R1 => r1,
                    Base::R2 => r2,
                    Base::C1 => c1,
                    Base::C2 => c2,
                };
                (if x.negated { -b } else { b }) + 2 * x.shift
            };
            let gamma = vec![c[0].gamma(&p).unwrap(), c[1].gamma(&p).unwrap()];
            let (z, pp) = z_p_of_gamma(&gamma, &p).unwrap();
            let cv = ContentVector::new(vec![doubled(&c[0]), doubled(&c[1])], Some(r1), Some(r2))
                .unwrap();
            let label = pair_label(&c);
            assert_eq!(z, z_set(&cv).into_iter().collect::<Vec<_>>(), "{label}");
            assert_eq!(pp, p_set(&cv).into_iter().collect::<Vec<_>>(), "{label}");
            assert_eq!(z.is_empty(), tag == Rank2Tag::Regular, "{label}");
        }
        let chars = rank2_characters(&HeckeParams::default()).unwrap();
        assert_eq!(
            chars
                .iter()
                .filter(|c| c.class == Rank2Tag::Regular)
                .count(),
            12
        );
        assert_eq!(
            chars
                .iter()
                .filter(|c| c.class == Rank2Tag::Nonregular)
                .count(),
            9
        );
    }

    #[test]
    fn class_parsing() {
        for c in Rank2Class::all() {
            assert_eq!(c.to_string().parse::<Rank2Class>().unwrap(), c);
        }
        assert_eq!(
            "L+(½,½)".parse::<Rank2Class>().unwrap().family,
            Rank2Family::HalfHalf
        );
        assert!(matches!(
            "L+(2,2)".parse::<Rank2Class>(),
            Err(Error::UnknownClass(_))
        ));
    }

    #[test]
    fn induced_families() {
        let p = HeckeParams::default();
        for class in Rank2Class::all() {
            let m = rank2_induced::<Scalar>(class, &p, &Scalar::one()).unwrap();
            let report = verify_relations(&m.module, &p).unwrap();
            assert!(report.all_pass(), "{class}: {:?}", report.failures());
            let expect = match class.family {
                Rank2Family::ZeroR(_) | Rank2Family::HalfHalf => vec![2, 2],
                _ => vec![1, 1, 2],
            };
            assert_eq!(m.weight_dims(), expect, "{class}");
            assert!(!m.is_calibrated(), "{class}");
            assert!(
                is_irreducible(&m.module, Some(&orbit_candidates(class, &p))).unwrap(),
                "{class}"
            );
        }
    }

    fn orbit_candidates(class: Rank2Class, p: &HeckeParams) -> Vec<(String, Vec<Scalar>)> {
        orbit(class.inducing_data().1)
            .into_iter()
            .map(|c| {
                (
                    pair_label(&c),
                    vec![c[0].gamma(p).unwrap(), c[1].gamma(p).unwrap()],
                )
            })
            .collect()
    }

    #[test]
    fn induced_weight_labels() {
        let p = HeckeParams::default();
        let m = rank2_induced::<Scalar>("L+(0,r2)".parse().unwrap(), &p, &Scalar::one()).unwrap();
        assert_eq!(m.weight_space("(r2,0)").unwrap().dim, 2);
        assert_eq!(m.weight_space("(0,r2)").unwrap().dim, 2);
        let m = rank2_induced::<Scalar>("L+(r1,r1)".parse().unwrap(), &p, &Scalar::one()).unwrap();
        assert_eq!(m.weight_space("(r1,-r1)").unwrap().dim, 1);
        assert_eq!(m.weight_space("(-r1,r1)").unwrap().dim, 1);
        assert_eq!(m.weight_space("(r1,r1)").unwrap().dim, 2);
        let m =
            rank2_induced::<Scalar>("L+(1/2,1/2)".parse().unwrap(), &p, &Scalar::one()).unwrap();
        assert_eq!(m.weight_space("(1/2,1/2)").unwrap().dim, 2);
        assert_eq!(m.weight_space("(-1/2,1/2)").unwrap().dim, 2);
        let m = rank2_induced::<Scalar>("L+(0,1)".parse().unwrap(), &p, &Scalar::one()).unwrap();
        assert_eq!(m.weight_space("(-1,0)").unwrap().dim, 1);
        assert_eq!(m.weight_space("(1,0)").unwrap().dim, 1);
        assert_eq!(m.weight_space("(0,1)").unwrap().dim, 2);
    }
}
