// temporary profiling probe
use homalg::ncalg::{sklyanin_algebra, GradedAlgebra, SklyaninParams};
use homalg::hochschild::KoszulComplex;
use homalg::linalg::ratio;
use std::time::Instant;

fn main() {
    let p = SklyaninParams::new(ratio(1, 4), ratio(1, 9)).unwrap();
    let alg = sklyanin_algebra(&p);
    for n in [5usize, 6, 7, 8] {
        let t = Instant::now();
        let g = GradedAlgebra::new(alg.clone(), n);
        println!("graded to {n}: {:?} (dim {})", t.elapsed(), g.dim(n));
    }
    let t = Instant::now();
    let k = KoszulComplex::new(p.clone(), 8).unwrap();
    println!("complex new (incl graded 8): {:?}", t.elapsed());
    for (m, d) in [(1usize, 8usize), (2, 8), (3, 8), (4, 8)] {
        let t = Instant::now();
        let mat = k.boundary_matrix(m, d);
        let t_assemble = t.elapsed();
        let t = Instant::now();
        let r = mat.rank();
        println!("b_{m} weight {d}: assemble {:?} rank {:?} (rank={r}, {}x{})", t_assemble, t.elapsed(), mat.rows(), mat.cols());
    }
}
