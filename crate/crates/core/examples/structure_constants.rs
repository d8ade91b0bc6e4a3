//! Chevalley structure constants and the identities they satisfy.

use lie_fts::chevalley::ChevalleyBasis;
use lie_fts::sampling::Coverage;
use lie_fts::scalar::Rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cb = ChevalleyBasis::for_type("d4".parse()?)?;
    let rs = cb.root_system();

    println!("D4 constants c(a_i, b) for simple a_i and positive b with a_i + b a root:");
    for &a in rs.simple_roots() {
        for b in rs.ids().filter(|&b| rs.root(b).is_positive()) {
            if rs.add(a, b).is_some() {
                println!("  c({:?}, {:?}) = {}", rs.coords(a), rs.coords(b), cb.c(a, b));
            }
        }
    }

    // [x_a, x_{-a}] = h_a.
    let a = rs.simple(1);
    let h = cb.bracket::<Rational>(&cb.x(a), &cb.x(rs.neg(a)))?;
    println!("\n[x_a2, x_-a2] = {h:?}");

    for label in ["d4", "e6", "f4"] {
        let cb = ChevalleyBasis::for_type(label.parse()?)?;
        let carter = cb.verify_carter(Coverage::Exhaustive);
        let jacobi = cb.verify_jacobi(Coverage::sampled(1, 200));
        println!(
            "{label}: sign/size rules {} pairs clean={}, Jacobi {} triples clean={}",
            carter.checked,
            carter.is_clean(),
            jacobi.checked,
            jacobi.is_clean()
        );
    }
    Ok(())
}
