#[path = "../examples/partition_categories.rs"]
mod partition_categories;
#[path = "../examples/weingarten_moments.rs"]
mod weingarten_moments;
#[path = "../examples/invariant_states.rs"]
mod invariant_states;
#[path = "../examples/matrix_classes.rs"]
mod matrix_classes;
#[path = "../examples/group_duals.rs"]
mod group_duals;
#[path = "../examples/haar_oracles.rs"]
mod haar_oracles;
#[path = "../examples/free_projection_witness.rs"]
mod free_projection_witness;

#[test]
fn partition_categories_runs() {
    partition_categories::run_example().expect("partition_categories example should run");
}

#[test]
fn weingarten_moments_runs() {
    weingarten_moments::run_example().expect("weingarten_moments example should run");
}

#[test]
fn invariant_states_runs() {
    invariant_states::run_example().expect("invariant_states example should run");
}

#[test]
fn matrix_classes_runs() {
    matrix_classes::run_example().expect("matrix_classes example should run");
}

#[test]
fn group_duals_runs() {
    group_duals::run_example().expect("group_duals example should run");
}

#[test]
fn haar_oracles_runs() {
    haar_oracles::run_example().expect("haar_oracles example should run");
}

#[test]
fn free_projection_witness_runs() {
    free_projection_witness::run_example().expect("free_projection_witness example should run");
}
