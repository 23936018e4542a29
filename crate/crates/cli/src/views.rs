//! JSON shapes printed by the subcommands. Half-integers appear as "p/2"
//! strings; sets of roots and tableaux come out in sorted order.

use std::collections::BTreeSet;

use serde::Serialize;

use hecke2b::hecke::{Module, RelationCheck};
use hecke2b::regions::{format_half, BoxConfiguration, LocalRegion};
use hecke2b::schurweyl::{Partition, SchurWeylRegion};
use hecke2b::weyl::Root;
use hecke2b::{Field, Scalar, SignedPermutation};

pub fn halves(v: &[i64]) -> Vec<String> {
    v.iter().map(|&x| format_half(x)).collect()
}

pub fn root_strings(roots: &BTreeSet<Root>) -> Vec<String> {
    roots.iter().map(ToString::to_string).collect()
}

#[derive(Serialize)]
pub struct BoxView {
    pub label: i32,
    pub diagonal: String,
    pub rank: usize,
}

#[derive(Serialize)]
pub struct MarkingView {
    pub diagonal: String,
    pub before: usize,
}

#[derive(Serialize)]
pub struct KappaView {
    pub boxes: Vec<BoxView>,
    pub markings: Vec<MarkingView>,
    /// Pairs [a, b] with box_a NW of box_b.
    pub nw: Vec<[i32; 2]>,
}

impl From<&BoxConfiguration> for KappaView {
    fn from(k: &BoxConfiguration) -> Self {
        let mut boxes: Vec<BoxView> = k
            .boxes
            .iter()
            .map(|b| BoxView {
                label: b.label,
                diagonal: format_half(b.diagonal),
                rank: b.rank,
            })
            .collect();
        boxes.sort_by_key(|b| b.label);
        KappaView {
            boxes,
            markings: k
                .markings
                .iter()
                .map(|m| MarkingView {
                    diagonal: format_half(m.diagonal),
                    before: m.before,
                })
                .collect(),
            nw: k.nw.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct RegionView {
    pub k: usize,
    pub c: Vec<String>,
    pub r1: Option<String>,
    pub r2: Option<String>,
    #[serde(rename = "J")]
    pub j: Vec<String>,
    #[serde(rename = "Z")]
    pub z: Vec<String>,
    #[serde(rename = "P")]
    pub p: Vec<String>,
    pub skew: bool,
    /// F^{(c,J)} as windows (w(1), …, w(k)), sorted.
    #[serde(rename = "F")]
    pub f: Vec<Vec<i32>>,
    /// The same elements as reduced words in s₀, …, s_{k−1}.
    pub words: Vec<String>,
    /// The standard fillings S_w as values on box_1, …, box_k.
    pub fillings: Vec<Vec<i32>>,
    pub kappa: Option<KappaView>,
}

pub fn word_text(w: &SignedPermutation) -> String {
    let word = w.reduced_word();
    if word.is_empty() {
        "1".to_string()
    } else {
        word.iter()
            .map(|i| format!("s{i}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl RegionView {
    pub fn new(
        region: &LocalRegion,
        members: &[SignedPermutation],
        fillings: Vec<Vec<i32>>,
        kappa: Option<&BoxConfiguration>,
        skew: bool,
    ) -> Self {
        RegionView {
            k: region.k(),
            c: halves(&region.content.c),
            r1: region.content.r1.map(format_half),
            r2: region.content.r2.map(format_half),
            j: root_strings(&region.j),
            z: root_strings(&region.z()),
            p: root_strings(&region.p()),
            skew,
            f: members.iter().map(|w| w.window().to_vec()).collect(),
            words: members.iter().map(word_text).collect(),
            fillings,
            kappa: kappa.map(KappaView::from),
        }
    }
}

#[derive(Serialize)]
#[serde(bound(serialize = "F: Field + Serialize"))]
pub struct ModuleView<'a, F> {
    pub source: String,
    pub dim: usize,
    pub weight_dims: Option<Vec<usize>>,
    pub calibrated: Option<bool>,
    pub irreducible: Option<bool>,
    pub module: &'a Module<F>,
}

#[derive(Serialize)]
pub struct VerifyView {
    pub name: String,
    pub dim: usize,
    pub all_pass: bool,
    pub checks: Vec<RelationCheck>,
}

#[derive(Serialize)]
pub struct ZView {
    pub sign: i8,
    pub q_power: i64,
    pub value: Scalar,
    pub text: String,
}

#[derive(Serialize)]
pub struct IndexedBoxView {
    pub index: usize,
    pub row: usize,
    pub col: usize,
    pub content: i64,
    pub shifted_content: String,
}

#[derive(Serialize)]
pub struct MapLambdaView {
    pub lambda: Partition,
    pub k: usize,
    pub s0max: Partition,
    pub z: ZView,
    pub c: Vec<String>,
    pub r1: Option<String>,
    pub r2: Option<String>,
    #[serde(rename = "J")]
    pub j: Vec<String>,
    pub w_reading_path: Vec<i32>,
    pub boxes: Vec<IndexedBoxView>,
    pub skew: Option<bool>,
}

impl From<&SchurWeylRegion> for MapLambdaView {
    fn from(d: &SchurWeylRegion) -> Self {
        let sign: i8 = if d.k.is_multiple_of(2) { 1 } else { -1 };
        let text = format!("{}q^{}", if sign < 0 { "-" } else { "" }, d.q_power);
        MapLambdaView {
            lambda: d.lambda.clone(),
            k: d.k,
            s0max: d.s0max.clone(),
            z: ZView {
                sign,
                q_power: d.q_power,
                value: d.z.clone(),
                text,
            },
            c: halves(&d.region.content.c),
            r1: d.region.content.r1.map(format_half),
            r2: d.region.content.r2.map(format_half),
            j: root_strings(&d.region.j),
            w_reading_path: d.reading_path_w.window().to_vec(),
            boxes: d
                .boxes
                .iter()
                .enumerate()
                .map(|(i, b)| IndexedBoxView {
                    index: i + 1,
                    row: b.row,
                    col: b.col,
                    content: b.content,
                    shifted_content: format_half(b.shifted2),
                })
                .collect(),
            skew: d.skew,
        }
    }
}
