//! Smoothness of blow-ups of hypersurfaces along disjoint coordinate
//! centers, decided with exact Groebner basis computations.
//!
//! ```
//! use blowup_core::{Analyzer, SceneFile};
//!
//! let file = SceneFile::from_toml(
//!     r#"
//! schema = 1
//! variables = ["x1", "x2", "y1", "y2"]
//! hypersurface = "x1*y1 + x2*y2"
//!
//! [[centers]]
//! name = "X"
//! vanishing = ["y1", "y2"]
//! "#,
//! )
//! .unwrap();
//! let analyzer = Analyzer::default();
//! let scene = file.to_scene(analyzer.engine()).unwrap();
//! let analysis = analyzer.analyze(&scene).unwrap();
//! assert!(analysis.hypothesis.is_smooth());
//! assert_eq!(analysis.ledger.strict_transform.exceptional, [-1]);
//! ```

pub mod corpus;
pub mod error;
pub mod geometry;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod scene_file;
pub mod sod;

pub use error::{GeometryError, IdealError, ParseError, PolyError, ScalarError, SceneError};
pub use geometry::{Analysis, Analyzer, Center, Scene, Verdict};
pub use ideal::{Dimension, Engine, GroebnerBasis, Ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_expression;
pub use poly::{Polynomial, Ring};
pub use report::{Command, Report};
pub use scalar::{Field, Scalar};
pub use scene_file::SceneFile;
