//! The JSON input descriptor.

use serde::{Deserialize, Serialize};

use cohint::group_rep::{build_standard, product, GroupDescriptor, GroupFamily, PairVG, SymmetricRep};
use cohint::{Result, Weight};

pub const DEFAULT_CUTOFF: i64 = 20;

/// A weight with multiplicity, written `[[coeffs...], mult]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weighted(pub Vec<i64>, pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Torus {
        rank: usize,
    },
    Gl {
        n: usize,
    },
    Sl {
        n: usize,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
    Raw {
        rank: usize,
        roots: Vec<Weighted>,
        weyl_generators: Vec<Vec<Vec<i64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationSpec {
    pub weights: Vec<Weighted>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "default_cutoff")]
    pub cutoff: i64,
}

fn default_cutoff() -> i64 {
    DEFAULT_CUTOFF
}

impl Default for Options {
    fn default() -> Self {
        Self { cutoff: DEFAULT_CUTOFF }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDescriptor {
    pub group: GroupSpec,
    pub representation: RepresentationSpec,
    #[serde(default)]
    pub options: Options,
}

fn expand(pairs: &[Weighted]) -> Vec<Weight> {
    pairs.iter().flat_map(|Weighted(c, m)| std::iter::repeat_n(Weight(c.clone()), *m)).collect()
}

impl GroupSpec {
    pub fn build(&self) -> Result<GroupDescriptor> {
        match self {
            GroupSpec::Torus { rank } => build_standard(&GroupFamily::Torus(*rank)),
            GroupSpec::Gl { n } => build_standard(&GroupFamily::Gl(*n)),
            GroupSpec::Sl { n } => build_standard(&GroupFamily::Sl(*n)),
            GroupSpec::Product { factors } => product(&factors.iter().map(GroupSpec::build).collect::<Result<Vec<_>>>()?),
            GroupSpec::Raw { rank, roots, weyl_generators, label } => GroupDescriptor::from_raw(
                *rank,
                expand(roots),
                weyl_generators.clone(),
                label.clone().unwrap_or_else(|| format!("raw({rank})")),
            ),
        }
    }
}

impl InputDescriptor {
    pub fn parse(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    pub fn group(&self) -> Result<GroupDescriptor> {
        self.group.build()
    }

    pub fn rep(&self, rank: usize) -> Result<SymmetricRep> {
        SymmetricRep::new(rank, expand(&self.representation.weights))
    }

    pub fn pair(&self) -> Result<PairVG> {
        let g = self.group()?;
        let rep = self.rep(g.rank)?;
        PairVG::new(rep, g)
    }
}
