//! Eigenspaces of the semisimple element h on g_1 and the two cubic forms.

use lie_fts::classify::{cubic_f1, cubic_f2, eigen_decompose};
use lie_fts::fts::FtsContext;
use lie_fts::rootsys::{RootId, RootSystem};
use lie_fts::scalar::Rational;

/// First triple in `space` that completes `anchor` to a quadruple summing to `2 rho`.
fn witness(rs: &RootSystem, anchor: RootId, space: &[RootId]) -> Option<[RootId; 3]> {
    for (i, &b) in space.iter().enumerate() {
        for (j, &g) in space.iter().enumerate().skip(i + 1) {
            for &d in &space[j + 1..] {
                if rs.sums_to_two_rho([anchor, b, g, d]) {
                    return Some([b, g, d]);
                }
            }
        }
    }
    None
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for label in ["d4", "d6", "e6", "e7", "e8"] {
        let ctx = FtsContext::for_type(label.parse()?)?;
        let d = eigen_decompose(&ctx)?;
        println!("{label}: dims of the -3, -1, +1, +3 eigenspaces {:?}", d.dims());
    }

    let ctx = FtsContext::for_type("e8".parse()?)?;
    let rs = ctx.root_system();
    let d = eigen_decompose(&ctx)?;

    let t = witness(rs, rs.alpha(), &d.plus1).expect("witness in the +1 space");
    let y = ctx.sum_of::<Rational>(&t)?;
    println!("y in the +1 space: {}", ctx.describe(&y));
    println!("f1(y) = {}", cubic_f1(&ctx, &y)?);

    let t = witness(rs, rs.rho_minus(rs.alpha()).unwrap(), &d.minus1).expect("witness in the -1 space");
    let z = ctx.sum_of::<Rational>(&t)?;
    println!("z in the -1 space: {}", ctx.describe(&z));
    println!("f2(z) = {}", cubic_f2(&ctx, &z)?);
    Ok(())
}
