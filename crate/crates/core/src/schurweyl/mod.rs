//! The combinatorial Schur–Weyl layer: the tensor product of two rectangles,
//! Bratteli diagrams, paths, the map from partitions to local regions and
//! the module on the path basis.

pub mod bratteli;
pub mod mapping;
pub mod partition;
pub mod path_module;

pub use bratteli::{
    bratteli, bratteli_bounded, paths_to_lambda, rect_tensor, BratteliDiagram, BratteliEdge,
    BratteliVertex, Level0Vertex, Path, RectPair,
};
pub use mapping::{
    configuration_from_lambda, dimension_identity, index_boxes, j_from_boxes, lambda_region,
    lambda_to_zcj, path_to_w, reading_path, s0max, DimensionIdentity, DimensionTerm, IndexedBox,
    SchurWeylRegion,
};
pub use partition::{add_box_expansion, content, dim_gl, Partition};
pub use path_module::{
    build_level, build_path_module, t_diagonal, x1_diagonal, y1_diagonal, PathModule,
};
