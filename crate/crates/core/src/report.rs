//! Run reports, the static claims registry, and CSV flattening.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One checked statement, cited by id in every report that exercises it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
}

pub static CLAIMS: &[Claim] = &[
    Claim { id: "unisingular-definition", statement: "a representation is unisingular when det(I - M) = 0 for every group element" },
    Claim { id: "specht-hook-unisingular", statement: "S^(n-2,1,1) is unisingular for S_n" },
    Claim { id: "specht-two-row-unisingular", statement: "S^(n-2,2) is unisingular for S_n" },
    Claim {
        id: "conjugate-two-row-offender",
        statement: "for odd n >= 5, S^(n-2,2)' lacks eigenvalue 1 exactly on the class of an (n-2)-cycle times a transposition",
    },
    Claim { id: "conjugate-two-row-alternating", statement: "for odd n >= 5, the restriction of S^(n-2,2)' to A_n is unisingular" },
    Claim { id: "conjecture-table", statement: "det(I - M) on S^(n-2,2)' at C_(n-2,2) is 6, 20, 56, 144, 352 for n = 5, 7, 9, 11, 13" },
    Claim { id: "conjecture-closed-form", statement: "the determinant at n = 2k + 1 equals 2^(k-1)(2k-1)" },
    Claim { id: "fixed-vectors", statement: "every element of S_n has a nonzero fixed vector in S^(n-2,1,1) and S^(n-2,2), built from explicit tableaux" },
    Claim { id: "mod2-hook-n5", statement: "S^(3,1,1) reduced mod 2 has composition factors of dimensions 1, 1, 4" },
    Claim { id: "mod2-two-row", statement: "for 5 <= n <= 13, S^(n-2,2) is irreducible mod 2 exactly when n = 7 or 11" },
    Claim { id: "agl2-3-unisingular", statement: "AGL_2(3) in Sp_8(F_2) is absolutely irreducible and unisingular" },
    Claim {
        id: "agl2-3-census",
        statement: "irreducible proper fixed-point subgroups of AGL_2(3) in Sp_8(F_2) have orders 144, 72, 72, 216",
    },
    Claim {
        id: "pgl2-19-not-unisingular",
        statement: "PGL_2(19) in Sp_18(F_2) is not unisingular: elements of order 19 have cyclotomic charpoly of degree 18",
    },
    Claim {
        id: "steinberg-l3-2",
        statement: "the 8-dimensional Steinberg module of L_3(2) over F_2 is unisingular and absolutely irreducible",
    },
    Claim { id: "malle-discriminant", statement: "disc(g_{a,t}) = -2^8 3^9 t^4 a^6 r(a,t)^3" },
    Claim { id: "malle-g-1-32-ramification", statement: "y^2 = g_{1,-32}(x) has bad reduction only at 2 and 3" },
    Claim {
        id: "malle-g-1-32-even-points",
        statement: "the Jacobian of y^2 = g_{1,-32}(x) has an even number of points over F_p for all p >= 5",
    },
    Claim { id: "malle-g-1-1-galois", statement: "g_{1,1} has Galois group AGammaL_1(9)" },
    Claim { id: "parity-bridge", statement: "#J(F_p) is even iff the embedded Frobenius has eigenvalue 1 (char Frob = x^(2g) P(1/x) mod 2)" },
];

pub fn claim(id: &str) -> Result<&'static Claim> {
    CLAIMS.iter().find(|c| c.id == id).ok_or_else(|| Error::InvalidParameter(format!("unknown claim id '{id}'")))
}

/// Anchor string attached to report rows: `id: statement`.
pub fn anchor(id: &str) -> String {
    match claim(id) {
        Ok(c) => format!("{}: {}", c.id, c.statement),
        Err(_) => id.to_string(),
    }
}

/// Outcome of one command before wrapping.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub verified: bool,
    pub anchors: Vec<&'static str>,
    pub result: Value,
    /// Flat rows for CSV export, with a fixed header.
    pub table: Table,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: String,
    pub command: String,
    pub parameters: Value,
    pub seed: u64,
    pub verified: bool,
    pub anchors: Vec<String>,
    pub result: Value,
    pub wall_time_ms: u128,
}

impl RunReport {
    pub fn new(command: &str, parameters: Value, seed: u64, outcome: &Outcome, wall_time_ms: u128) -> Self {
        RunReport {
            version: VERSION.to_string(),
            command: command.to_string(),
            parameters,
            seed,
            verified: outcome.verified,
            anchors: outcome.anchors.iter().map(|id| anchor(id)).collect(),
            result: outcome.result.clone(),
            wall_time_ms,
        }
    }

    /// Exit status: 0 verified, 1 refuted.
    pub fn exit_code(&self) -> i32 {
        if self.verified {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Everything except the wall time, for determinism checks.
    pub fn payload(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            m.remove("wall_time_ms");
        }
        v
    }
}

/// CSV with the outcome's fixed header; every row gets the anchor ids.
pub fn to_csv(outcome: &Outcome) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = outcome.table.header.clone();
    header.push("anchors".into());
    w.write_record(&header).map_err(|e| Error::Parse(e.to_string()))?;
    let anchors = outcome.anchors.join(";");
    for row in &outcome.table.rows {
        let mut r = row.clone();
        r.push(anchors.clone());
        w.write_record(&r).map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique() {
        let mut ids: Vec<&str> = CLAIMS.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), CLAIMS.len());
        assert!(claim("conjecture-table").is_ok());
        assert!(claim("nope").is_err());
    }

    #[test]
    fn csv_quotes_fields() {
        let mut table = Table::new(&["a", "b"]);
        table.push(vec!["1".into(), "x, y".into()]);
        let o = Outcome { verified: true, anchors: vec!["conjecture-table"], result: Value::Null, table };
        let s = to_csv(&o).unwrap();
        assert_eq!(s, "a,b,anchors\n1,\"x, y\",conjecture-table\n");
    }
}
