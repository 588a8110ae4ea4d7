//! JSON interchange. Scalars are reduced `"p/q"` strings (`"p"` for integers);
//! integer literals are also accepted on input.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::assoc::{FiniteGroup, FinAssocAlg, GroupAction};
use crate::band::BandMatrix;
use crate::central::{BlockMatrix, ExtElement, WSymbol};
use crate::error::{Error, Result};
use crate::lie::FinLieAlg;
use crate::linalg::DenseMatrix;
use crate::poly::Poly;
use crate::quasi::{QuasiPolySeq, QuasiPolyTail};
use crate::rank::{Construction, QuadraticReal, RankReport};
use crate::scalar::Field;
use crate::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Text(String),
    Int(i64),
}

fn enc<F: Field>(v: &F) -> ScalarJson {
    ScalarJson::Text(v.to_text())
}

fn dec<F: Field>(v: &ScalarJson) -> Result<F> {
    match v {
        ScalarJson::Int(i) => Ok(F::from_i64(*i)),
        ScalarJson::Text(s) => F::parse_text(s).ok_or_else(|| Error::Schema(format!("bad rational '{s}'"))),
    }
}

fn dec_all<F: Field>(v: &[ScalarJson]) -> Result<Vec<F>> {
    v.iter().map(dec).collect()
}

fn schema(e: Error) -> Error {
    match e {
        Error::Domain(m) => Error::Schema(m),
        other => other,
    }
}

pub fn from_str<T: DeserializeOwned>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))
}

pub fn to_string<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable value")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeftJson {
    pub period: usize,
    pub polys: Vec<Vec<ScalarJson>>,
    pub until: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowJson {
    pub start: i64,
    pub values: Vec<ScalarJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RightJson {
    pub period: usize,
    pub polys: Vec<Vec<ScalarJson>>,
    pub from: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalJson {
    pub offset: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<LeftJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<RightJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandJson {
    pub diagonals: Vec<DiagonalJson>,
}

fn tail_polys<F: Field>(t: &QuasiPolyTail<F>) -> Vec<Vec<ScalarJson>> {
    t.polys().iter().map(|p| p.coeffs().iter().map(enc).collect()).collect()
}

fn tail_from<F: Field>(period: usize, polys: &[Vec<ScalarJson>]) -> Result<QuasiPolyTail<F>> {
    if period == 0 || polys.len() != period {
        return Err(Error::Schema(format!(
            "tail period {period} does not match {} polynomials",
            polys.len()
        )));
    }
    Ok(QuasiPolyTail::new(
        polys.iter().map(|c| dec_all(c).map(Poly::new)).collect::<Result<_>>()?,
    ))
}

impl BandJson {
    pub fn encode<F: Field>(x: &BandMatrix<F>) -> Self {
        let diagonals = x
            .diagonals()
            .map(|(offset, s)| DiagonalJson {
                offset,
                left: (!s.left().is_zero()).then(|| LeftJson {
                    period: s.left().period(),
                    polys: tail_polys(s.left()),
                    until: s.lo() - 1,
                }),
                window: (!s.window().is_empty()).then(|| WindowJson {
                    start: s.lo(),
                    values: s.window().iter().map(enc).collect(),
                }),
                right: (!s.right().is_zero()).then(|| RightJson {
                    period: s.right().period(),
                    polys: tail_polys(s.right()),
                    from: s.hi() + 1,
                }),
            })
            .collect();
        Self { diagonals }
    }

    pub fn decode<F: Field>(&self) -> Result<BandMatrix<F>> {
        let mut seen = std::collections::BTreeSet::new();
        let mut diags = Vec::new();
        for d in &self.diagonals {
            if !seen.insert(d.offset) {
                return Err(Error::Schema(format!("diagonal {} listed twice", d.offset)));
            }
            let len = d.window.as_ref().map_or(0, |w| w.values.len() as i64);
            let mut lo = None;
            for cand in [
                d.window.as_ref().map(|w| w.start),
                d.left.as_ref().map(|l| l.until + 1),
                d.right.as_ref().map(|r| r.from - len),
            ]
            .into_iter()
            .flatten()
            {
                match lo {
                    None => lo = Some(cand),
                    Some(l) if l != cand => {
                        return Err(Error::Schema(format!(
                            "diagonal {}: tail boundaries disagree with the window",
                            d.offset
                        )))
                    }
                    _ => {}
                }
            }
            let left = match &d.left {
                Some(l) => tail_from(l.period, &l.polys)?,
                None => QuasiPolyTail::zero(),
            };
            let right = match &d.right {
                Some(r) => tail_from(r.period, &r.polys)?,
                None => QuasiPolyTail::zero(),
            };
            let window = match &d.window {
                Some(w) => dec_all(&w.values)?,
                None => Vec::new(),
            };
            diags.push((d.offset, QuasiPolySeq::from_parts(left, lo.unwrap_or(0), window, right)));
        }
        Ok(BandMatrix::from_diagonals(diags))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtJson {
    pub x: BandJson,
    pub c: ScalarJson,
}

impl ExtJson {
    pub fn encode<F: Field>(u: &ExtElement<F>) -> Self {
        Self {
            x: BandJson::encode(&u.x),
            c: enc(&u.c),
        }
    }

    pub fn decode<F: Field>(&self) -> Result<ExtElement<F>> {
        Ok(ExtElement::new(self.x.decode()?, dec(&self.c)?))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WJson {
    pub a: i64,
    pub poly: Vec<ScalarJson>,
}

impl WJson {
    pub fn encode<F: Field>(w: &WSymbol<F>) -> Self {
        Self {
            a: w.a,
            poly: w.f.coeffs().iter().map(enc).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlocksJson {
    pub n: usize,
    pub blocks: Vec<Vec<BandJson>>,
}

impl BlocksJson {
    pub fn encode<F: Field>(b: &BlockMatrix<F>) -> Self {
        Self {
            n: b.len(),
            blocks: b.iter().map(|r| r.iter().map(BandJson::encode).collect()).collect(),
        }
    }

    pub fn decode<F: Field>(&self) -> Result<BlockMatrix<F>> {
        if self.blocks.len() != self.n || self.blocks.iter().any(|r| r.len() != self.n) {
            return Err(Error::Schema(format!("expected a {0} x {0} block array", self.n)));
        }
        self.blocks
            .iter()
            .map(|r| r.iter().map(BandJson::decode).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub k: usize,
    pub c: ScalarJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryJson {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermJson>,
}

fn enc_terms<F: Field>(t: &[(usize, F)]) -> Vec<TermJson> {
    t.iter().map(|(k, c)| TermJson { k: *k, c: enc(c) }).collect()
}

fn dec_entries<F: Field>(e: &[EntryJson]) -> Result<Vec<((usize, usize), Vec<(usize, F)>)>> {
    e.iter()
        .map(|e| {
            let terms = e.terms.iter().map(|t| Ok((t.k, dec(&t.c)?))).collect::<Result<_>>()?;
            Ok(((e.i, e.j), terms))
        })
        .collect()
}

fn enc_matrix<F: Field>(m: &DenseMatrix<F>) -> Vec<Vec<ScalarJson>> {
    (0..m.nrows()).map(|i| m.row(i).iter().map(enc).collect()).collect()
}

fn dec_matrix<F: Field>(rows: &[Vec<ScalarJson>]) -> Result<DenseMatrix<F>> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Schema("ragged matrix".into()));
    }
    Ok(DenseMatrix::from_rows(rows.iter().map(|r| dec_all(r)).collect::<Result<_>>()?))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieJson {
    pub dim: usize,
    pub labels: Vec<String>,
    pub bracket: Vec<EntryJson>,
}

impl LieJson {
    pub fn encode<F: Field>(g: &FinLieAlg<F>) -> Self {
        Self {
            dim: g.dim(),
            labels: g.labels().to_vec(),
            bracket: g
                .structure()
                .iter()
                .map(|(&(i, j), t)| EntryJson { i, j, terms: enc_terms(t) })
                .collect(),
        }
    }

    /// Structural errors are schema errors; a Jacobi failure is a domain error.
    pub fn decode<F: Field>(&self) -> Result<FinLieAlg<F>> {
        let entries = dec_entries(&self.bracket)?;
        if self.labels.len() != self.dim
            || entries.iter().any(|((i, j), t)| {
                *i >= self.dim || *j >= self.dim || t.iter().any(|(k, _)| *k >= self.dim)
            })
        {
            return Err(Error::Schema("bracket indices or labels inconsistent with dim".into()));
        }
        FinLieAlg::new(self.dim, self.labels.clone(), entries)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssocJson {
    pub dim: usize,
    pub unit: Vec<ScalarJson>,
    pub mult: Vec<EntryJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<Vec<Vec<ScalarJson>>>,
}

impl AssocJson {
    pub fn encode<F: Field>(a: &FinAssocAlg<F>) -> Self {
        let dim = a.dim();
        let mult = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let t = a.mul_basis(i, j);
                (!t.is_empty()).then(|| EntryJson { i, j, terms: enc_terms(t) })
            })
            .collect();
        Self {
            dim,
            unit: a.unit().iter().map(enc).collect(),
            mult,
            involution: a.involution().map(enc_matrix),
        }
    }

    /// Shape errors are schema errors; failed algebra axioms are domain errors.
    pub fn decode<F: Field>(&self) -> Result<FinAssocAlg<F>> {
        let entries = dec_entries(&self.mult)?;
        let inv = self.involution.as_deref().map(dec_matrix).transpose()?;
        let dim = self.dim;
        if self.unit.len() != dim
            || entries
                .iter()
                .any(|((i, j), t)| *i >= dim || *j >= dim || t.iter().any(|(k, _)| *k >= dim))
            || inv.as_ref().is_some_and(|m| m.nrows() != dim || m.ncols() != dim)
        {
            return Err(Error::Schema("algebra data inconsistent with dim".into()));
        }
        FinAssocAlg::new(dim, dec_all(&self.unit)?, entries, inv)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    pub cayley: Vec<Vec<usize>>,
    pub matrices: Vec<Vec<Vec<ScalarJson>>>,
}

impl ActionJson {
    pub fn encode<F: Field>(g: &GroupAction<F>) -> Self {
        Self {
            cayley: g.group.cayley().to_vec(),
            matrices: g.matrices.iter().map(enc_matrix).collect(),
        }
    }

    pub fn decode<F: Field>(&self) -> Result<GroupAction<F>> {
        let group = FiniteGroup::new(self.cayley.clone())?;
        let mats = self.matrices.iter().map(|m| dec_matrix(m)).collect::<Result<Vec<_>>>()?;
        if mats.is_empty() {
            return Err(Error::Schema("no action matrices".into()));
        }
        GroupAction::new(group, mats)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticJson {
    pub a: ScalarJson,
    pub b: ScalarJson,
    pub d: u64,
}

impl QuadraticJson {
    pub fn encode(x: &QuadraticReal) -> Self {
        Self {
            a: enc(x.a()),
            b: enc(x.b()),
            d: x.d(),
        }
    }

    pub fn decode(&self) -> Result<QuadraticReal> {
        QuadraticReal::new(dec::<Scalar>(&self.a)?, dec::<Scalar>(&self.b)?, self.d).map_err(schema)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApproximantJson {
    pub n: usize,
    pub rank: usize,
    pub density: ScalarJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankJson {
    pub mode: String,
    pub approximants: Vec<ApproximantJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ScalarJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<(usize, usize)>,
}

impl RankJson {
    pub fn encode<F: Field>(r: &RankReport<F>) -> Self {
        Self {
            mode: r.mode.clone(),
            approximants: r
                .approximants
                .iter()
                .map(|a| ApproximantJson {
                    n: a.n,
                    rank: a.rank,
                    density: enc(&a.density),
                })
                .collect(),
            exact: r.exact.as_ref().map(enc),
            period: r.period,
            window: r.window,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionJson {
    pub target: QuadraticJson,
    pub steps: usize,
    /// Values at `-steps..=steps`.
    pub values: Vec<u8>,
    pub r: Vec<usize>,
}

impl ConstructionJson {
    pub fn encode(x: &QuadraticReal, c: &Construction) -> Self {
        Self {
            target: QuadraticJson::encode(x),
            steps: c.steps,
            values: c.values.clone(),
            r: c.r.clone(),
        }
    }
}

pub fn scalar_json<F: Field>(v: &F) -> ScalarJson {
    enc(v)
}

pub fn parse_scalar<F: Field>(v: &ScalarJson) -> Result<F> {
    dec(v)
}
