//! Root systems of the supported types and the grading by the alpha-height.

use lie_fts::rootsys::{DynkinType, RootSystem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for label in ["b4", "d4", "d6", "e6", "e7", "e8", "f4"] {
        let rs = RootSystem::new(label.parse::<DynkinType>()?)?;
        let dims: Vec<usize> = (-2..=2).map(|k| rs.roots_of_alpha_height(k).len()).collect();
        println!(
            "{:<3} roots {:>3}  dim g {:>3}  alpha {:?}  rho {:?}  |g_k| for k=-2..2 (roots only) {:?}",
            label,
            rs.len(),
            rs.algebra_dim(),
            rs.coords(rs.alpha()),
            rs.coords(rs.rho()),
            dims
        );
    }

    let d4 = RootSystem::new("d4".parse()?)?;
    println!("\nD4 alpha-height-1 roots and their partners rho - beta:");
    for &b in d4.height1_roots() {
        let p = d4.rho_minus(b).unwrap();
        println!("  {:?} <-> {:?}  long: {}", d4.coords(b), d4.coords(p), d4.is_long(b));
    }
    Ok(())
}
