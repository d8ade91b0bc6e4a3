//! Diagram automorphisms of D4 acting on g_1, and torus elements fixing q.

use lie_fts::fts::FtsContext;
use lie_fts::sampling::rng_from_seed;
use lie_fts::scalar::{Rational, Scalar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = FtsContext::for_type("d4".parse()?)?;
    let rs = ctx.root_system();
    let cb = ctx.basis();
    let sigma = cb.diagram_automorphism_d4([3, 4, 1])?;

    println!("cyclic triality on g_1:");
    for &b in ctx.height1() {
        let (img, sign) = sigma.root_image(b);
        println!("  x{:?} -> {:+} x{:?}", rs.coords(b), sign, rs.coords(img));
    }

    let mut rng = rng_from_seed(3);
    let x = loop {
        let x = ctx.random_element::<Rational, _>(&mut rng, 6);
        if !ctx.quartic(&x)?.is_zero() {
            break x;
        }
    };
    println!("x = {}", ctx.describe(&x));
    let sx = ctx.from_lie(&sigma.apply(&ctx.to_lie(&x))?)?;
    println!("q(x) = {}  q(sigma x) = {}", ctx.quartic(&x)?, ctx.quartic(&sx)?);

    // lambda with <rho, lambda> = 0 acts on g_1 and preserves q.
    let lambda = [1, 0, -1, 0];
    let t = Rational::from_integer(5.into());
    println!("<rho, lambda> = {}", cb.torus_exponent(&lambda, rs.rho()));
    let tx = ctx.torus_scale(&lambda, &t, &x)?;
    println!("q(lambda(5) x) = {}", ctx.quartic(&tx)?);
    Ok(())
}
