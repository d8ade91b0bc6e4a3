//! The triple product on g_1 and the triple-system axiom.

use lie_fts::fts::FtsContext;
use lie_fts::sampling::rng_from_seed;
use lie_fts::scalar::Rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = FtsContext::for_type("d5".parse()?)?;
    let mut rng = rng_from_seed(42);
    let x = ctx.random_element::<Rational, _>(&mut rng, 4);
    let y = ctx.random_element::<Rational, _>(&mut rng, 4);
    let z = ctx.random_element::<Rational, _>(&mut rng, 4);
    let w = ctx.random_element::<Rational, _>(&mut rng, 4);

    let xyz = ctx.triple_product(&x, &y, &z);
    println!("x   = {}", ctx.describe(&x));
    println!("xyz = {}", ctx.describe(&xyz));
    println!("<w, xyz>      = {}", ctx.bilinear(&w, &xyz));
    println!("q(w, x, y, z) = {}", ctx.quadrilinear(&w, &x, &y, &z)?);
    println!("xyz == yzx: {}", xyz == ctx.triple_product(&y, &z, &x));

    let ok = (0..50).all(|_| {
        let a = ctx.random_element::<Rational, _>(&mut rng, 6);
        let b = ctx.random_element::<Rational, _>(&mut rng, 6);
        ctx.check_fts_axiom(&a, &b)
    });
    println!("2 (xxx) x y = <y,x> xxx + <y,xxx> x on 50 random pairs: {ok}");
    Ok(())
}
