//! The symplectic form and the quartic form on g_1, computed by brackets and
//! by the closed form on basis quadruples.

use lie_fts::fts::FtsContext;
use lie_fts::scalar::{Rational, Scalar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = FtsContext::for_type("e6".parse()?)?;
    let rs = ctx.root_system();
    let a = rs.alpha();
    let pa = rs.rho_minus(a).unwrap();

    let xa = ctx.x::<Rational>(a)?;
    let xpa = ctx.x::<Rational>(pa)?;
    println!("E6: dim g_1 = {}", ctx.dim());
    println!("<x_alpha, x_(rho-alpha)> = {}", ctx.bilinear(&xa, &xpa));
    println!("same by bracket         = {}", ctx.bilinear_by_bracket(&xa, &xpa)?);

    let x = ctx.rank4_representative::<Rational>();
    println!("q(x_alpha + x_(rho-alpha)) = {}", ctx.quartic(&x)?);
    let two = Rational::from_i64(2);
    println!("q(2 x)                     = {}", ctx.quartic(&x.scale(&two))?);

    // Compare the closed form with the symmetrized bracket chain on every
    // quadruple summing to 2 rho that starts with alpha.
    let h1 = ctx.height1().to_vec();
    let mut checked = 0;
    for &b in &h1 {
        for &c in &h1 {
            for &d in &h1 {
                let q = [a, b, c, d];
                if !rs.sums_to_two_rho(q) {
                    continue;
                }
                let closed: Rational = ctx.quartic_closed_form(q)?;
                assert_eq!(closed, ctx.basis_quadrilinear(q)?);
                checked += 1;
            }
        }
    }
    println!("closed form matches brackets on {checked} quadruples through alpha");
    Ok(())
}
