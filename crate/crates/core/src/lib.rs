//! Exact inversive geometry over anisotropic quadratic spaces.
//!
//! A quadratic space `E` over a field of characteristic other than two carries
//! the space of cycles `a X.X + b.X + c`, whose pairing turns circles, lines
//! and points of `E` plus a point at infinity into one projective picture.
//! Everything here is computed exactly over `Q`, `F_p` or `Q(sqrt d)`.

pub mod cycle;
pub mod error;
pub mod field;
pub mod linalg;
pub mod lorentz;
pub mod ninepoint;
pub mod pencil;
pub mod projline;
pub mod sample;
pub mod space;
pub mod transform;

pub use cycle::{CenterSize, Cycle, CycleClass, VPoint, ZeroSetVerdict};
pub use error::{Error, Result};
pub use field::{ElementStream, Field, FieldElement, FieldKind};
pub use linalg::Matrix;
pub use sample::Sampler;
pub use lorentz::{lorentz_product, stereo_from_cycle, stereo_to_cycle, u_to_v, LorentzVec};
pub use pencil::{conjugate, isotropic_points, orthocomplement, CommonZeros, Conjugate, Pencil, PencilClass};
pub use space::{Anisotropy, AnisotropyVerdict, EVector, QuadSpace, Representation, Space};
pub use transform::{
    affine_reflect, invert_point, is_projective_frame, isotropic_frame, map_pair_to_pair, reflect, reflect_point, CycleMatrix,
    InversiveWord, Reflection,
};
pub use projline::{
    desargues_condition, desargues_involution, line_pairing, moebius_apply, polar_involution, word_to_moebius,
    BinaryQuadric, Moebius,
};
pub use ninepoint::{
    eleven_point_conic, nine_point_circle, nine_points, orthic_pencil, orthocenter, pole_of_line, Conic, Line,
    NinePointCircle, NinePoints, OrthoConfig, PlanePoint,
};
