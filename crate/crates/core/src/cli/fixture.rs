use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::polyring::decimal;

/// Environment variable naming a replacement fixture file.
pub const FD_TABLE_ENV: &str = "CYCLOTOMIC_OBSTRUCTION_FD_TABLE";

const EMBEDDED: &str = include_str!("../../data/fd_table.json");

pub const FIRST_INDEX: u32 = 3;
pub const LAST_INDEX: u32 = 20;

/// Published discriminant factorizations: entry `j` claims the prime
/// factorization of `|disc(r_{j-1})|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperTableFixture {
    pub entries: BTreeMap<u32, Vec<(BigInt, u32)>>,
    pub checksum: String,
    pub origin: String,
}

#[derive(Deserialize)]
struct RawTable {
    entries: BTreeMap<String, Vec<(String, u32)>>,
}

impl PaperTableFixture {
    /// The embedded table, or the file named by [`FD_TABLE_ENV`] when set.
    pub fn load() -> Result<Self, String> {
        match std::env::var_os(FD_TABLE_ENV) {
            Some(path) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| format!("cannot read fixture {}: {e}", path.to_string_lossy()))?;
                Self::parse(&text, &path.to_string_lossy())
            }
            None => Self::embedded(),
        }
    }

    pub fn embedded() -> Result<Self, String> {
        Self::parse(EMBEDDED, "embedded")
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self, String> {
        let raw: RawTable =
            serde_json::from_str(text).map_err(|e| format!("fixture {origin}: {e}"))?;
        let mut entries = BTreeMap::new();
        for (key, factors) in raw.entries {
            let j: u32 = key
                .parse()
                .map_err(|_| format!("fixture {origin}: bad index {key:?}"))?;
            let mut parsed = Vec::with_capacity(factors.len());
            for (p, e) in factors {
                let p =
                    decimal::parse(&p).map_err(|e| format!("fixture {origin}, fd[{j}]: {e}"))?;
                if e != 1 {
                    return Err(format!(
                        "fixture {origin}, fd[{j}]: exponent {e} for {p}, expected 1"
                    ));
                }
                parsed.push((p, e));
            }
            entries.insert(j, parsed);
        }
        let expected: Vec<u32> = (FIRST_INDEX..=LAST_INDEX).collect();
        let found: Vec<u32> = entries.keys().copied().collect();
        if found != expected {
            return Err(format!(
                "fixture {origin}: indices {found:?}, expected {FIRST_INDEX}..={LAST_INDEX}"
            ));
        }
        let digest = Sha256::digest(text.as_bytes());
        let checksum = digest.iter().map(|b| format!("{b:02x}")).collect();
        Ok(PaperTableFixture {
            entries,
            checksum,
            origin: origin.to_string(),
        })
    }

    /// Claims for `|disc(r_k)|`, if the table covers `k`.
    pub fn claims_for_k(&self, k: u32) -> Option<&[(BigInt, u32)]> {
        self.entries.get(&(k + 1)).map(Vec::as_slice)
    }
}
