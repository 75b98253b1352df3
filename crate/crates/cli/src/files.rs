//! The three JSON file schemas and their conversions to core values.
//!
//! Output is canonical: object keys sorted, no whitespace, one trailing
//! newline. Element names are presentation only; every table and pair list
//! uses indices.

use std::collections::{BTreeMap, BTreeSet};

use relrep_core::algebra::{FinitePoset, JoinSemilatticeSemigroup, ResiduatedSemigroup, Table, DEFAULT_WITNESS_CAP};
use relrep_core::games::{Certificate, GoalPair, Move, Reply, Verdict, Winner};
use relrep_core::relational::{FiniteBase, Rel, Representation};
use relrep_core::BitMatrix;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Rs,
    Jsl,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub kind: Kind,
    pub elements: Vec<String>,
    pub compose: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<Vec<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub join: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_residual: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_residual: Option<Vec<Vec<usize>>>,
}

/// A loaded algebra, not yet checked against its axioms.
#[derive(Debug, Clone)]
pub enum Algebra {
    Rs(ResiduatedSemigroup),
    Jsl(JoinSemilatticeSemigroup),
}

impl Algebra {
    pub fn size(&self) -> usize {
        match self {
            Algebra::Rs(a) => a.size(),
            Algebra::Jsl(a) => a.size(),
        }
    }
}

/// Serializes with sorted keys and a trailing newline.
pub fn to_canonical<T: Serialize>(value: &T) -> Result<String, CliError> {
    // serde_json::Value keeps object keys in a BTreeMap.
    let v = serde_json::to_value(value).map_err(|e| CliError::Internal(e.to_string()))?;
    let mut s = serde_json::to_string(&v).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        what: what.to_string(),
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })
}

fn table(rows: &[Vec<usize>], name: &str) -> Result<Table, CliError> {
    Table::from_rows(rows).map_err(|e| CliError::Schema(format!("{name}: {e}")))
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

impl AlgebraFile {
    /// Checks the shape of the file and builds the algebra. Residuals are
    /// derived when absent; declared tables are not yet validated.
    pub fn to_algebra(&self) -> Result<Algebra, CliError> {
        let n = self.elements.len();
        if self.elements.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(schema("element names are not distinct"));
        }
        if self.compose.len() != n {
            return Err(schema(format!("compose has {} rows for {n} elements", self.compose.len())));
        }
        let compose = table(&self.compose, "compose")?;
        match self.kind {
            Kind::Jsl => {
                if self.order.is_some() || self.left_residual.is_some() || self.right_residual.is_some() {
                    return Err(schema("a jsl file carries only compose and join"));
                }
                let join = self.join.as_ref().ok_or_else(|| schema("a jsl file needs a join table"))?;
                if join.len() != n {
                    return Err(schema(format!("join has {} rows for {n} elements", join.len())));
                }
                let alg = JoinSemilatticeSemigroup::new(compose, table(join, "join")?).map_err(CliError::from)?;
                Ok(Algebra::Jsl(alg))
            }
            Kind::Rs => {
                if self.join.is_some() {
                    return Err(schema("an rs file has no join table"));
                }
                let order = self.order.as_ref().ok_or_else(|| schema("an rs file needs an order table"))?;
                if order.len() != n || order.iter().flatten().any(|&b| b > 1) {
                    return Err(schema(format!("order must be an {n}x{n} table of 0 and 1")));
                }
                let rows: Vec<Vec<bool>> = order.iter().map(|r| r.iter().map(|&b| b == 1).collect()).collect();
                let poset = FinitePoset::from_matrix(&rows).map_err(|e| schema(format!("order: {e}")))?;
                if !poset.is_partial_order() {
                    return Err(CliError::Invalid(poset.validate(DEFAULT_WITNESS_CAP)));
                }
                let rs = match (&self.left_residual, &self.right_residual) {
                    (Some(l), Some(r)) => ResiduatedSemigroup::new(
                        poset,
                        compose,
                        table(l, "left_residual")?,
                        table(r, "right_residual")?,
                    )?,
                    (None, None) => ResiduatedSemigroup::from_compose(poset, compose)?,
                    _ => return Err(schema("give both residual tables or neither")),
                };
                Ok(Algebra::Rs(rs))
            }
        }
    }

    pub fn from_rs(rs: &ResiduatedSemigroup, names: Vec<String>, residuals: bool) -> AlgebraFile {
        AlgebraFile {
            kind: Kind::Rs,
            elements: names,
            compose: rs.compose_table().rows(),
            order: Some(rs.poset().matrix().iter().map(|r| r.iter().map(|&b| u8::from(b)).collect()).collect()),
            join: None,
            left_residual: residuals.then(|| rs.lres_table().rows()),
            right_residual: residuals.then(|| rs.rres_table().rows()),
        }
    }

    pub fn from_jsl(alg: &JoinSemilatticeSemigroup, names: Vec<String>) -> AlgebraFile {
        AlgebraFile {
            kind: Kind::Jsl,
            elements: names,
            compose: alg.compose_table().rows(),
            order: None,
            join: Some(alg.join_table().rows()),
            left_residual: None,
            right_residual: None,
        }
    }

    /// SHA-256 of the canonical index-only content; element names do not count.
    pub fn hash(&self) -> Result<String, CliError> {
        let content = AlgebraFile { elements: Vec::new(), ..self.clone() };
        Ok(hex::encode(Sha256::digest(to_canonical(&content)?.as_bytes())))
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub base: Vec<String>,
    pub relations: BTreeMap<String, Vec<[usize; 2]>>,
}

impl RepresentationFile {
    pub fn from_representation(rep: &Representation, names: &[String]) -> RepresentationFile {
        RepresentationFile {
            base: rep.base().labels().to_vec(),
            relations: names
                .iter()
                .zip(rep.relations())
                .map(|(name, r)| (name.clone(), r.pairs().into_iter().map(|(x, y)| [x, y]).collect()))
                .collect(),
        }
    }

    /// Rebuilds the representation, matching relations to element names.
    pub fn to_representation(&self, names: &[String]) -> Result<Representation, CliError> {
        let base = FiniteBase::new(self.base.clone()).map_err(|e| schema(format!("base: {e}")))?;
        let n = base.size();
        if let Some(extra) = self.relations.keys().find(|k| !names.contains(k)) {
            return Err(schema(format!("relation for unknown element {extra:?}")));
        }
        let mut map = Vec::with_capacity(names.len());
        for name in names {
            let pairs = self.relations.get(name).ok_or_else(|| schema(format!("no relation for element {name:?}")))?;
            if pairs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(schema(format!("pairs of {name:?} are not sorted and duplicate-free")));
            }
            let mut m = BitMatrix::zeros(n);
            for &[x, y] in pairs {
                if x >= n || y >= n {
                    return Err(schema(format!("pair [{x}, {y}] of {name:?} is outside a base of {n} points")));
                }
                m.set(x, y, true);
            }
            map.push(Rel::from_matrix(&base, m)?);
        }
        Ok(Representation::new(base, map)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MoveRecord {
    Composition { x: usize, y: usize, z: usize, b: usize, c: usize },
    Witness { x: usize, y: usize, d: usize, e: usize, c: usize },
    Join { x: usize, y: usize, c: usize, d: usize },
}

impl From<Move> for MoveRecord {
    fn from(m: Move) -> Self {
        match m {
            Move::Composition { x, y, z, b, c } => MoveRecord::Composition { x, y, z, b, c },
            Move::Witness { x, y, d, e, c } => MoveRecord::Witness { x, y, d, e, c },
            Move::Join { x, y, c, d } => MoveRecord::Join { x, y, c, d },
        }
    }
}

impl From<MoveRecord> for Move {
    fn from(m: MoveRecord) -> Self {
        match m {
            MoveRecord::Composition { x, y, z, b, c } => Move::Composition { x, y, z, b, c },
            MoveRecord::Witness { x, y, d, e, c } => Move::Witness { x, y, d, e, c },
            MoveRecord::Join { x, y, c, d } => Move::Join { x, y, c, d },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ReplyRecord {
    Forced,
    At { node: usize },
    Pick { element: usize },
}

impl From<Reply> for ReplyRecord {
    fn from(r: Reply) -> Self {
        match r {
            Reply::Forced => ReplyRecord::Forced,
            Reply::At(node) => ReplyRecord::At { node },
            Reply::Pick(element) => ReplyRecord::Pick { element },
        }
    }
}

impl From<ReplyRecord> for Reply {
    fn from(r: ReplyRecord) -> Self {
        match r {
            ReplyRecord::Forced => Reply::Forced,
            ReplyRecord::At { node } => Reply::At(node),
            ReplyRecord::Pick { element } => Reply::Pick(element),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateRecord {
    Won,
    Play {
        #[serde(rename = "move")]
        mv: MoveRecord,
        replies: Vec<Branch>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Branch {
    pub reply: ReplyRecord,
    pub then: CertificateRecord,
}

impl From<&Certificate> for CertificateRecord {
    fn from(c: &Certificate) -> Self {
        match c {
            Certificate::Won => CertificateRecord::Won,
            Certificate::Play { mv, replies } => CertificateRecord::Play {
                mv: (*mv).into(),
                replies: replies.iter().map(|(r, c)| Branch { reply: (*r).into(), then: c.into() }).collect(),
            },
        }
    }
}

impl From<&CertificateRecord> for Certificate {
    fn from(c: &CertificateRecord) -> Self {
        match c {
            CertificateRecord::Won => Certificate::Won,
            CertificateRecord::Play { mv, replies } => Certificate::Play {
                mv: (*mv).into(),
                replies: replies.iter().map(|b| (b.reply.into(), (&b.then).into())).collect(),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WinnerRecord {
    Exists,
    Forall,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoalVerdict {
    pub a: usize,
    pub b: usize,
    pub winner: WinnerRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictFile {
    pub algebra: String,
    pub depth: usize,
    pub goals: Vec<GoalVerdict>,
}

impl VerdictFile {
    pub fn new<'a>(algebra: String, depth: usize, verdicts: impl IntoIterator<Item = &'a Verdict>) -> VerdictFile {
        let goals = verdicts
            .into_iter()
            .map(|v| GoalVerdict {
                a: v.goal.a.0,
                b: v.goal.b.0,
                winner: match v.winner {
                    Winner::Exists => WinnerRecord::Exists,
                    Winner::Forall => WinnerRecord::Forall,
                },
                certificate: v.certificate.as_ref().map(CertificateRecord::from),
            })
            .collect();
        VerdictFile { algebra, depth, goals }
    }

    /// Checks that certificates sit exactly on the universal verdicts.
    pub fn check_shape(&self) -> Result<(), CliError> {
        for g in &self.goals {
            if (g.winner == WinnerRecord::Forall) != g.certificate.is_some() {
                return Err(schema(format!("goal ({}, {}): certificate present iff the winner is forall", g.a, g.b)));
            }
        }
        Ok(())
    }

    pub fn goal_pairs(&self) -> impl Iterator<Item = (GoalPair, &GoalVerdict)> {
        self.goals.iter().map(|g| (GoalPair::new(g.a, g.b), g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use relrep_core::algebra::fixtures;

    fn two_chain_file() -> AlgebraFile {
        AlgebraFile {
            kind: Kind::Rs,
            elements: vec!["bot".into(), "top".into()],
            compose: vec![vec![0, 0], vec![0, 1]],
            order: Some(vec![vec![1, 1], vec![0, 1]]),
            join: None,
            left_residual: None,
            right_residual: None,
        }
    }

    #[test]
    fn residuals_are_derived() {
        let Algebra::Rs(rs) = two_chain_file().to_algebra().unwrap() else { panic!("rs expected") };
        assert_eq!(rs.lres_table().rows(), [[1, 1], [0, 1]]);
        assert_eq!(rs.rres_table().rows(), [[1, 0], [1, 1]]);
    }

    #[test]
    fn canonical_keys_are_sorted() {
        let text = to_canonical(&two_chain_file()).unwrap();
        assert_eq!(
            text,
            "{\"compose\":[[0,0],[0,1]],\"elements\":[\"bot\",\"top\"],\"kind\":\"rs\",\"order\":[[1,1],[0,1]]}\n"
        );
        let back: AlgebraFile = from_json(&text, "algebra").unwrap();
        assert_eq!(back, two_chain_file());
    }

    #[test]
    fn hash_ignores_names() {
        let mut renamed = two_chain_file();
        renamed.elements = vec!["0".into(), "1".into()];
        assert_eq!(renamed.hash().unwrap(), two_chain_file().hash().unwrap());
        let mut other = two_chain_file();
        other.compose[1][1] = 0;
        assert_ne!(other.hash().unwrap(), two_chain_file().hash().unwrap());
    }

    #[test]
    fn shape_errors() {
        let mut f = two_chain_file();
        f.join = Some(vec![vec![0, 1], vec![1, 1]]);
        assert!(matches!(f.to_algebra(), Err(CliError::Schema(_))));
        let mut g = two_chain_file();
        g.compose[0][1] = 2;
        assert!(matches!(g.to_algebra(), Err(CliError::Schema(_))));
        let mut h = two_chain_file();
        h.elements[1] = "bot".into();
        assert!(matches!(h.to_algebra(), Err(CliError::Schema(_))));
        assert!(matches!(from_json::<AlgebraFile>("{\"kind\": 1}", "algebra"), Err(CliError::Parse { line: 1, .. })));
    }

    #[test]
    fn representation_round_trip() {
        let rs = fixtures::two_chain_min_rs();
        let rep = relrep_core::relational::represent(&rs).unwrap();
        let names = default_names(2);
        let file = RepresentationFile::from_representation(&rep, &names);
        assert_eq!(file.relations["e0"], [[0, 0], [0, 1]]);
        assert_eq!(file.to_representation(&names).unwrap(), rep);
        let mut unsorted = file.clone();
        unsorted.relations.get_mut("e1").unwrap().reverse();
        assert!(matches!(unsorted.to_representation(&names), Err(CliError::Schema(_))));
    }

    #[test]
    fn certificate_round_trip() {
        let cert = Certificate::Play {
            mv: Move::Witness { x: 0, y: 1, d: 0, e: 0, c: 1 },
            replies: vec![(Reply::At(0), Certificate::Won), (Reply::At(2), Certificate::Won)],
        };
        let record = CertificateRecord::from(&cert);
        let text = to_canonical(&record).unwrap();
        assert!(text.starts_with("{\"play\":{\"move\":{\"c\":1,\"d\":0,\"e\":0,\"kind\":\"witness\""));
        let back: CertificateRecord = from_json(&text, "certificate").unwrap();
        assert_eq!(Certificate::from(&back), cert);
    }
}
