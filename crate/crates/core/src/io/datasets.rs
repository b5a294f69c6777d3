//! Graphs shipped with the crate, checked against a SHA-256 digest on load.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::edgelist::parse_edge_list;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dataset {
    /// `P3[{C5, K3, K2}]`, 10 vertices and 30 edges.
    Fig1,
    /// `C5` with one vertex replaced by `K2`.
    Fig2,
    /// A 44-vertex graph with a 21-part maximal modular partition.
    Fig3,
    /// The minimal quotient of [`Dataset::Fig3`].
    Fig3Quotient,
}

impl Dataset {
    pub const ALL: [Dataset; 4] = [Dataset::Fig1, Dataset::Fig2, Dataset::Fig3, Dataset::Fig3Quotient];

    pub fn name(self) -> &'static str {
        match self {
            Dataset::Fig1 => "fig1",
            Dataset::Fig2 => "fig2",
            Dataset::Fig3 => "fig3",
            Dataset::Fig3Quotient => "fig3-quotient",
        }
    }

    pub fn from_name(name: &str) -> Option<Dataset> {
        Self::ALL.into_iter().find(|d| d.name() == name)
    }

    /// The edge-list source as shipped.
    pub fn text(self) -> &'static str {
        match self {
            Dataset::Fig1 => include_str!("../../data/fig1.edges"),
            Dataset::Fig2 => include_str!("../../data/fig2.edges"),
            Dataset::Fig3 => include_str!("../../data/fig3.edges"),
            Dataset::Fig3Quotient => include_str!("../../data/fig3-quotient.edges"),
        }
    }

    /// Expected SHA-256 of [`Dataset::text`], lowercase hex.
    pub fn checksum(self) -> &'static str {
        match self {
            Dataset::Fig1 => "b06f35f83fa1db90380d4dafa6da7dd7ff900a19cb024c2af1b0c031f4d98375",
            Dataset::Fig2 => "91f2b311d85640e8bc248c65df89fec64d289539a3596dd7b2ba69b5edf8fcaf",
            Dataset::Fig3 => "6395ecd2a80784305bd56129f5494d1ce590de5cbcccbb5b513dd471cc436e18",
            Dataset::Fig3Quotient => "f21e1a982c087a522fa73fe0bbfa25c6c7900f5b91f4993d4f430622ab6dcbf6",
        }
    }

    pub fn graph(self) -> Result<Graph> {
        let digest = sha256_hex(self.text());
        if digest != self.checksum() {
            return Err(Error::Precondition(format!(
                "dataset {} checksum mismatch: {digest}",
                self.name()
            )));
        }
        parse_edge_list(self.text())
    }
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}
