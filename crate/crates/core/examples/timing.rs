use std::time::Instant;
fn main() {
    for name in ["cz2", "cz2_rmatrix", "super_ext_1", "super_ext_2", "super_ext_3", "anyon_line_4", "group_z_4"] {
        let t = Instant::now();
        let _ = hopf_cyclic::catalog::load_example(name).unwrap();
        eprintln!("{name}: {:?}", t.elapsed());
    }
}
