//! Synthetic data, graph ingestion and file formats.

mod files;
mod graph;
mod synth;

pub use files::{
    read_configuration_csv, read_dissimilarity_csv, read_edge_list, read_feature_table,
    read_matrix_csv, read_path_csv, read_sweep_csv, sibling_path, write_configuration_csv,
    write_dissimilarity_csv, write_edge_list, write_mapping_csv, write_matrix_csv, write_path_csv,
    write_replicate_summary, write_sweep_csv, write_trace_csv, CONFIG_HEADER, PATH_HEADER,
    SUMMARY_HEADER, SWEEP_HEADER, TRACE_HEADER,
};
pub use graph::{
    component_sizes, graph_to_dissimilarity, largest_connected_component, Edge, GraphInput,
    GraphMode,
};
pub use synth::{
    add_noise, euclidean_dissimilarity, generate_synthetic, sphere_distance, GeneratorPoints,
    SyntheticKind, SyntheticSet, SyntheticSpec, DISK_SAMPLE_RADIUS,
};
