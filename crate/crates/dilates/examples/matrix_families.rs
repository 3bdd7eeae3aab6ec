//! Analyze integer matrix families: predicates, recovery of the underlying
//! dilate system, and H(L_0, ..., L_k).

use dilates::matfam::{analyze, skew_example_family, MatrixFamily};

fn main() -> dilates::Result<()> {
    // {I, companion(y^2 - 2)}: multiplication by sqrt2 on Z[sqrt2]
    let companion = MatrixFamily::from_rows_i64(&[
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![0, 2], vec![1, 0]],
    ])?;
    let rep = analyze(&companion, 1e-9, 0);
    println!("companion family:");
    println!("  pre-commuting {:?}, irreducible {:?}, coprime {:?}",
        rep.pre_commuting, rep.irreducible, rep.coprime);
    println!("  G(x0,x1) = {}", rep.det_form);
    if let Some(field) = &rep.recovered_field {
        println!("  recovered field: {}", field);
    }
    if let Some(h) = &rep.h {
        println!("  H in [{:.12}, {:.12}]", h.h_lo, h.h_hi);
    }

    // a rescaled copy is no longer coprime
    let doubled = MatrixFamily::from_rows_i64(&[
        vec![vec![2, 0], vec![0, 2]],
        vec![vec![0, 4], vec![2, 0]],
    ])?;
    let rep = analyze(&doubled, 1e-9, 0);
    println!("doubled family: coprime {:?}", rep.coprime);

    // the 3x3 family of skew matrices: irreducible and coprime but not
    // pre-commuting, so H-analysis must refuse
    let skew = skew_example_family();
    let rep = analyze(&skew, 1e-9, 0);
    println!("skew 3x3 family:");
    println!("  pre-commuting {:?}, irreducible {:?}, coprime {:?}",
        rep.pre_commuting, rep.irreducible, rep.coprime);
    println!("  G = {} (identically zero pencil)", rep.det_form);
    println!("  H computable: {}", rep.h.is_some());
    Ok(())
}
