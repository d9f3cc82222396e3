//! JSON file formats.
//!
//! | file         | shape                                                   |
//! |--------------|---------------------------------------------------------|
//! | group        | `{ "name": str, "cayley": [[int]], "labels"?: [str] }`  |
//! | action       | `{ "group": <group file or name>, "carrier": int, "table": [[[int]]] }` |
//! | ordinary     | `{ "group": <group file or name>, "carrier": int, "table": [[int]] }` |
//! | binary op    | `{ "size": int, "table": [[int]] }`                     |
//! | topology     | `{ "size": int, "opens": [[int]] }`                     |
//!
//! Field order in serialized output follows the struct order below.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::action::{ActionError, BinaryAction, OrdinaryAction};
use crate::binop::{BinaryOp, BinopError};
use crate::catalog;
use crate::group::{FiniteGroup, GroupError};
use crate::subset::MAX_ELEMENTS;
use crate::topology::{FiniteTopology, TopologyError};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: invalid JSON: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("unknown group {0:?}: not a file and not a catalog name")]
    UnknownGroup(String),
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("{0}")]
    Group(#[from] GroupError),
    #[error("{0}")]
    Action(#[from] ActionError),
    #[error("{0}")]
    Binop(#[from] BinopError),
    #[error("{0}")]
    Topology(#[from] TopologyError),
}

impl IoError {
    /// Whether the failure is a validation failure of well-formed input, as
    /// opposed to an unreadable or unparsable file.
    pub fn is_validation(&self) -> bool {
        matches!(self, IoError::Group(_) | IoError::Action(_) | IoError::Binop(_) | IoError::Topology(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub cayley: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Inline(GroupFile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionFile {
    pub group: GroupRef,
    pub carrier: usize,
    pub table: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdinaryActionFile {
    pub group: GroupRef,
    pub carrier: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryOpFile {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyFile {
    pub size: usize,
    pub opens: Vec<Vec<usize>>,
}

/// A group with the name and element labels it was loaded under.
#[derive(Debug, Clone)]
pub struct NamedGroup {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub labels: Option<Vec<String>>,
}

impl NamedGroup {
    pub fn from_file(file: &GroupFile) -> Result<Self, GroupError> {
        let group = FiniteGroup::from_cayley(&file.cayley)?;
        if let Some(labels) = &file.labels {
            if labels.len() != group.order() {
                return Err(GroupError::MalformedTable(format!(
                    "{} labels for a group of order {}",
                    labels.len(),
                    group.order()
                )));
            }
        }
        Ok(NamedGroup { name: file.name.clone(), group: Arc::new(group), labels: file.labels.clone() })
    }

    /// Catalog lookup; permutation groups come with cycle-notation labels.
    pub fn from_catalog(name: &str) -> Option<Self> {
        let key = name.trim().to_ascii_lowercase();
        let perm = match key.as_bytes() {
            [b's', ..] => key[1..].parse().ok().filter(|n| (1..=4).contains(n)).map(catalog::symmetric),
            [b'd', ..] => key[1..].parse().ok().filter(|n| (3..=32).contains(n)).map(catalog::dihedral),
            _ => None,
        };
        if let Some(p) = perm {
            return Some(NamedGroup { name: key, labels: Some(p.labels()), group: Arc::new(p.group) });
        }
        catalog::by_name(&key).map(|g| NamedGroup { name: key, group: Arc::new(g), labels: None })
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile { name: self.name.clone(), cayley: self.group.cayley_rows(), labels: self.labels.clone() }
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    /// Parses an element given by index or by label.
    pub fn parse_element(&self, token: &str) -> Option<usize> {
        let token = token.trim();
        if let Ok(i) = token.parse::<usize>() {
            return (i < self.group.order()).then_some(i);
        }
        let compact = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        self.labels.as_ref()?.iter().position(|l| compact(l) == compact(token))
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| IoError::Json { path: path.to_path_buf(), source })
}

pub fn write_text(path: &Path, contents: &str) -> Result<(), IoError> {
    fs::write(path, contents).map_err(|source| IoError::Write { path: path.to_path_buf(), source })
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Resolves a group argument: an existing file path, otherwise a catalog name.
pub fn resolve_group(name_or_path: &str) -> Result<NamedGroup, IoError> {
    let path = Path::new(name_or_path);
    if path.is_file() {
        let file: GroupFile = read_json(path)?;
        return Ok(NamedGroup::from_file(&file)?);
    }
    NamedGroup::from_catalog(name_or_path).ok_or_else(|| IoError::UnknownGroup(name_or_path.to_string()))
}

fn resolve_group_ref(group: &GroupRef, base: Option<&Path>) -> Result<NamedGroup, IoError> {
    match group {
        GroupRef::Inline(file) => Ok(NamedGroup::from_file(file)?),
        GroupRef::Name(name) => {
            if let Some(g) = NamedGroup::from_catalog(name) {
                return Ok(g);
            }
            let path = base.map_or_else(|| PathBuf::from(name), |b| b.join(name));
            if path.is_file() {
                let file: GroupFile = read_json(&path)?;
                return Ok(NamedGroup::from_file(&file)?);
            }
            Err(IoError::UnknownGroup(name.clone()))
        }
    }
}

impl ActionFile {
    pub fn from_action(group: &NamedGroup, action: &BinaryAction) -> Self {
        ActionFile { group: GroupRef::Inline(group.to_file()), carrier: action.carrier(), table: action.nested_table() }
    }

    /// Validates the table. `base` resolves group names given as relative paths.
    pub fn load(&self, base: Option<&Path>) -> Result<(NamedGroup, BinaryAction), IoError> {
        let group = resolve_group_ref(&self.group, base)?;
        let action = BinaryAction::new(group.group.clone(), &self.table)?;
        if action.carrier() != self.carrier {
            return Err(ActionError::ShapeMismatch(format!(
                "declared carrier {} but table has {}",
                self.carrier,
                action.carrier()
            ))
            .into());
        }
        Ok((group, action))
    }
}

impl OrdinaryActionFile {
    pub fn from_action(group: &NamedGroup, action: &OrdinaryAction) -> Self {
        OrdinaryActionFile { group: GroupRef::Inline(group.to_file()), carrier: action.carrier(), table: action.rows() }
    }

    pub fn load(&self, base: Option<&Path>) -> Result<(NamedGroup, OrdinaryAction), IoError> {
        let group = resolve_group_ref(&self.group, base)?;
        let action = OrdinaryAction::new(group.group.clone(), &self.table)?;
        if action.carrier() != self.carrier {
            return Err(ActionError::ShapeMismatch(format!(
                "declared carrier {} but table has {}",
                self.carrier,
                action.carrier()
            ))
            .into());
        }
        Ok((group, action))
    }
}

impl BinaryOpFile {
    pub fn from_op(op: &BinaryOp) -> Self {
        BinaryOpFile { size: op.size(), table: op.rows() }
    }

    pub fn load(&self) -> Result<BinaryOp, IoError> {
        let op = BinaryOp::from_rows(&self.table)?;
        if op.size() != self.size {
            return Err(
                BinopError::Malformed(format!("declared size {} but table has {}", self.size, op.size())).into()
            );
        }
        Ok(op)
    }
}

impl TopologyFile {
    pub fn from_topology(t: &FiniteTopology) -> Self {
        TopologyFile { size: t.size(), opens: t.opens().iter().map(|s| s.to_vec()).collect() }
    }

    pub fn load(&self) -> Result<FiniteTopology, IoError> {
        let mut opens = Vec::with_capacity(self.opens.len());
        for set in &self.opens {
            if set.iter().any(|&i| i >= self.size) {
                let set = set.iter().copied().filter(|&i| i < MAX_ELEMENTS).collect();
                return Err(TopologyError::OutOfRange { set, size: self.size }.into());
            }
            opens.push(set.iter().copied().collect());
        }
        Ok(FiniteTopology::new(self.size, opens)?)
    }
}

pub fn load_action(path: &Path) -> Result<(NamedGroup, BinaryAction), IoError> {
    let file: ActionFile = read_json(path)?;
    file.load(path.parent())
}

pub fn load_ordinary(path: &Path) -> Result<(NamedGroup, OrdinaryAction), IoError> {
    let file: OrdinaryActionFile = read_json(path)?;
    file.load(path.parent())
}

pub fn load_op(path: &Path) -> Result<BinaryOp, IoError> {
    read_json::<BinaryOpFile>(path)?.load()
}

pub fn load_topology(path: &Path) -> Result<FiniteTopology, IoError> {
    read_json::<TopologyFile>(path)?.load()
}
