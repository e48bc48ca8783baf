//! The `verify-paper` pipeline: every claim about the built-in SL(5,R)
//! example is recomputed exactly and reported clause by clause.

use serde::Serialize;

use weylproper::criteria::{
    benoist_check, sl2_obstruction, BenoistVerdict, CertificateDoc, MembershipVerdict,
    SplitSubalgebra,
};
use weylproper::{default_basis, CartanPoint, Error, Rational};

use crate::{EXIT_MISMATCH, EXIT_OK};

const NORMAL: [i64; 5] = [6, 6, 1, -4, -9];

/// The four orthogonality relations certifying that every hyperbolic
/// element lies in the union of Weyl images of the subalgebra: each pairs a
/// table row (up to scale) with an explicit permutation image of the normal.
const ORTHOGONALITY: [([i64; 5], [i64; 5]); 4] = [
    ([3, 1, 0, -1, -3], [6, -9, -4, 6, 1]),
    ([2, 1, 0, -1, -2], [6, -4, -9, 6, 1]),
    ([1, 1, 0, -1, -1], [6, -9, 6, -4, 1]),
    ([1, 0, 0, 0, -1], [6, -9, -4, 1, 6]),
];

#[derive(Serialize)]
struct EquationOut {
    lhs: String,
    value: String,
}

#[derive(Serialize)]
struct VerifyDoc {
    command: &'static str,
    ok: bool,
    first_failure: Option<String>,
    n: usize,
    normal: Vec<String>,
    dim_a_h: usize,
    benoist: CertificateDoc,
    sl2: CertificateDoc,
    orthogonality: Vec<EquationOut>,
    scalar_multiple_note: String,
}

struct Clause {
    name: &'static str,
    ok: bool,
    lines: Vec<String>,
}

pub fn run(json: bool) -> Result<u8, Error> {
    let basis = default_basis(5);
    let normal = CartanPoint::from_integers(&basis, &NORMAL)?;
    let h = SplitSubalgebra::from_points(std::slice::from_ref(&normal))?;
    let mut clauses = Vec::new();

    // dimension of the subalgebra
    clauses.push(Clause {
        name: "dimension",
        ok: h.dim() == 3,
        lines: vec![format!("dim a_h = {} (expected 3)", h.dim())],
    });

    // discontinuous-group criterion with a replayable witness
    let benoist = benoist_check(&h)?;
    let benoist_ok = benoist.verdict == BenoistVerdict::Holds && benoist.verify()?;
    let mut lines = vec![format!("benoist criterion: {}", benoist.verdict)];
    if let (Some(witness), Some(membership)) = (&benoist.witness, &benoist.witness_membership) {
        lines.push(format!(
            "witness diag({witness}) escapes all {} distinct normal images; certificate replays",
            membership.images_checked
        ));
    }
    clauses.push(Clause {
        name: "benoist",
        ok: benoist_ok,
        lines,
    });

    // every hyperbolic element is obstructed
    let sl2 = sl2_obstruction(&h)?;
    let all_member = sl2
        .entries
        .iter()
        .all(|e| e.certificate.verdict == MembershipVerdict::Member);
    let sl2_ok = all_member && !sl2.proper_sl2_exists && sl2.verify()?;
    let mut lines = vec![format!(
        "{} partitions, all member: {all_member}, proper_sl2_exists = {}",
        sl2.entries.len(),
        sl2.proper_sl2_exists
    )];
    for e in &sl2.entries {
        lines.push(format!(
            "{:<8} {:<18} {}",
            e.element.partition().to_string(),
            format!("diag({})", e.element.point()),
            e.certificate.verdict
        ));
    }
    clauses.push(Clause {
        name: "sl2 obstruction",
        ok: sl2_ok,
        lines,
    });

    // the four explicit orthogonality relations
    let mut equations = Vec::new();
    let mut ortho_ok = true;
    for (left, right) in ORTHOGONALITY {
        let x = CartanPoint::from_integers(&basis, &left)?;
        let image = CartanPoint::from_integers(&basis, &right)?;
        let mut sorted_image = right.to_vec();
        let mut sorted_normal = NORMAL.to_vec();
        sorted_image.sort_unstable();
        sorted_normal.sort_unstable();
        let is_image = sorted_image == sorted_normal;
        let product = x.inner(&image)?;
        ortho_ok &= is_image && product.is_zero();
        equations.push(EquationOut {
            lhs: format!("<({x}),({image})>"),
            value: product.to_string(),
        });
    }
    clauses.push(Clause {
        name: "orthogonality relations",
        ok: ortho_ok,
        lines: equations
            .iter()
            .map(|e| format!("{} = {}", e.lhs, e.value))
            .collect(),
    });

    // the principal row is a scalar multiple of the [3,2] row, so the four
    // relations cover all nonzero rows up to scale
    let principal = CartanPoint::from_integers(&basis, &[4, 2, 0, -2, -4])?;
    let three_two = CartanPoint::from_integers(&basis, &[2, 1, 0, -1, -2])?;
    let two = Rational::from_integer(2.into());
    let multiple_ok = principal == three_two.scale(&two);
    let note = "diag(4,2,0,-2,-4) is a scalar multiple (2x) of diag(2,1,0,-1,-2)".to_string();
    clauses.push(Clause {
        name: "scalar multiple",
        ok: multiple_ok,
        lines: vec![note.clone()],
    });

    let first_failure = clauses.iter().find(|c| !c.ok).map(|c| c.name.to_string());
    let ok = first_failure.is_none();

    if json {
        let doc = VerifyDoc {
            command: "verify-paper",
            ok,
            first_failure: first_failure.clone(),
            n: 5,
            normal: normal.entries().iter().map(|s| s.to_string()).collect(),
            dim_a_h: h.dim(),
            benoist: benoist.to_doc(),
            sl2: sl2.to_doc(),
            orthogonality: equations,
            scalar_multiple_note: note,
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        );
    } else {
        println!("verify: n = 5, normal diag({normal})");
        for (i, clause) in clauses.iter().enumerate() {
            println!(
                "[{}] {} ... {}",
                i + 1,
                clause.name,
                if clause.ok { "ok" } else { "MISMATCH" }
            );
            for line in &clause.lines {
                println!("      {line}");
            }
        }
        match &first_failure {
            None => println!("PASS"),
            Some(name) => println!("FAIL: {name}"),
        }
    }

    Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
}
