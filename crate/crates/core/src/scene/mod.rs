//! Scene documents (JSON), batch evaluation and report rendering.

mod document;
mod report;

pub use document::{
    parse_scene, serialize_scene, OptionsSpec, Scene, SceneDocument, SceneError, SceneOptions,
    SceneWarning, SpaceSpec, StandardTag, StructureSpec, SubvarietySpec, DEFAULT_TOLERANCE,
};
pub use report::{
    render_table, run_scene, sig6, ChainEntry, Metadata, OracleCheck, Report, Row, StrategyValue,
    Violation, ViolationKind,
};
