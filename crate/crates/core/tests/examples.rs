//! Each example's entry point, run with its default arguments.

macro_rules! example {
    ($name:ident, $path:literal) => {
        #[allow(dead_code)]
        #[path = $path]
        mod $name;
    };
}

example!(tree_pairs, "../examples/tree_pairs.rs");
example!(brute_force, "../examples/brute_force.rs");
example!(group_ring, "../examples/group_ring.rs");
example!(integrality, "../examples/integrality.rs");
example!(density_curves, "../examples/density_curves.rs");
example!(free_density, "../examples/free_density.rs");
example!(checkpoint_resume, "../examples/checkpoint_resume.rs");
example!(ladder_tables, "../examples/ladder_tables.rs");
example!(norm_bounds, "../examples/norm_bounds.rs");

#[test]
fn all_examples_run() {
    let none: &[String] = &[];
    tree_pairs::run_example(none).unwrap();
    brute_force::run_example(none).unwrap();
    group_ring::run_example(none).unwrap();
    integrality::run_example(none).unwrap();
    density_curves::run_example(none).unwrap();
    free_density::run_example(none).unwrap();
    checkpoint_resume::run_example(none).unwrap();
    ladder_tables::run_example(none).unwrap();
    norm_bounds::run_example(none).unwrap();
}
