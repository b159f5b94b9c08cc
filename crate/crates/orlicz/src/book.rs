//! The guide's chapters, included verbatim so their code samples compile
//! and run under `cargo test`. A chapter snippet that stops working fails
//! the build here instead of rotting on the page.

#[doc = include_str!("../../../book/src/introduction.md")]
pub struct Introduction;

#[doc = include_str!("../../../book/src/orlicz-functions.md")]
pub struct GaugeFunctions;

#[doc = include_str!("../../../book/src/spectra-and-modulars.md")]
pub struct SpectraAndModulars;

#[doc = include_str!("../../../book/src/norms.md")]
pub struct Norms;

#[doc = include_str!("../../../book/src/tuple-spaces.md")]
pub struct TupleSpaces;

#[doc = include_str!("../../../book/src/interpolation.md")]
pub struct InterpolatedBounds;

#[doc = include_str!("../../../book/src/geometry-constants.md")]
pub struct GeometryConstants;

#[doc = include_str!("../../../book/src/cli.md")]
pub struct CommandLine;
