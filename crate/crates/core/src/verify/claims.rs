use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::engine::{are_isomorphic, centralizer, Subgroup};
use crate::error::Result;
use crate::trigroup::{Family, GroupSpec, TriMatrix};

/// One pairwise isomorphism check between centralizers in UT_4.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimCheck {
    pub claim: String,
    pub left: String,
    pub right: String,
    pub left_order: u64,
    pub right_order: u64,
    pub expected: bool,
    /// `None` if the isomorphism search could not run.
    pub isomorphic: Option<bool>,
    pub error: Option<String>,
}

impl ClaimCheck {
    pub fn passed(&self) -> bool {
        self.isomorphic == Some(self.expected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimReport {
    pub q: u32,
    pub checks: Vec<ClaimCheck>,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(ClaimCheck::passed)
    }
}

/// `I + sum c E_ij` in UT_4, with 1-based positions.
fn unipotent(entries: &[((usize, usize), u8)]) -> TriMatrix {
    let mut m = TriMatrix::identity(4, true);
    for &((i, j), v) in entries {
        m.set(i - 1, j - 1, v);
    }
    m
}

fn describe(entries: &[((usize, usize), u8)]) -> String {
    let terms: Vec<String> = entries
        .iter()
        .map(|&((i, j), v)| {
            if v == 1 {
                format!("E{i}{j}")
            } else {
                format!("{v}E{i}{j}")
            }
        })
        .collect();
    format!("I+{}", terms.join("+"))
}

/// Entries `((i, j), value)` above the diagonal of a unipotent matrix.
pub type Form = Vec<((usize, usize), u8)>;

/// Canonical representatives of the six A3 classes of UT_4.
pub fn a3_forms() -> Vec<Form> {
    vec![
        vec![((1, 2), 1)],
        vec![((3, 4), 1)],
        vec![((1, 2), 1), ((3, 4), 1)],
        vec![((1, 2), 1), ((2, 4), 1)],
        vec![((1, 3), 1), ((3, 4), 1)],
        vec![((1, 2), 1), ((1, 3), 1), ((3, 4), 1)],
    ]
}

/// Confirms that the listed UT_4 centralizers of a common type are
/// isomorphic: the two A1 forms `I + E13` and `I + E24`, and all six A3
/// forms. A final control pairs an A3 centralizer with the abelian R1
/// centralizer of `I + E23` and must come out non-isomorphic.
pub fn check_iso_claims(q: u32) -> Result<ClaimReport> {
    let spec = Arc::new(GroupSpec::new(Family::Ut, 4, q)?);
    let whole = Subgroup::whole(Arc::clone(&spec));
    let cent = |forms: &[((usize, usize), u8)]| -> Result<Subgroup> {
        let code = spec.encode(&unipotent(forms))?;
        centralizer(&whole, code)
    };

    let mut pairs: Vec<(&str, Form, Form, bool)> = vec![(
        "A1 centralizers are isomorphic",
        vec![((1, 3), 1)],
        vec![((2, 4), 1)],
        true,
    )];
    let a3 = a3_forms();
    for i in 0..a3.len() {
        for j in (i + 1)..a3.len() {
            pairs.push(("A3 centralizers are isomorphic", a3[i].clone(), a3[j].clone(), true));
        }
    }
    pairs.push(("A3 and R1 centralizers differ", a3[0].clone(), vec![((2, 3), 1)], false));

    let mut checks = Vec::with_capacity(pairs.len());
    for (claim, l, r, expected) in pairs {
        let (a, b) = (cent(&l)?, cent(&r)?);
        let (isomorphic, error) = match are_isomorphic(&a, &b) {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        };
        checks.push(ClaimCheck {
            claim: claim.to_string(),
            left: describe(&l),
            right: describe(&r),
            left_order: a.order(),
            right_order: b.order(),
            expected,
            isomorphic,
            error,
        });
    }
    Ok(ClaimReport { q, checks })
}
