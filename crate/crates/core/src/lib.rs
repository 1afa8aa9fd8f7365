//! A verification engine for projective three-space presented with points
//! and planes as primitives and lines as derived objects.
//!
//! The crate represents finite incidence structures, checks the four
//! point/plane axioms with replayable witnesses, derives lines as pairs of
//! pencils, checks the theorems that follow (including the Veblen–Young
//! axioms), and generates PG(3,q) over prime fields as models.
//!
//! ```
//! use pointplane::{check_all_axioms, generate_pg3, CheckOptions};
//!
//! let s = generate_pg3(2).unwrap();
//! let summary = check_all_axioms(&s, &CheckOptions::default()).unwrap();
//! assert!(summary.all_pass());
//! ```

pub mod axioms;
pub mod error;
pub mod incidence;
pub mod io;
pub mod lines;
pub mod pg;
pub mod quantify;
pub mod report;
pub mod search;
pub mod theorems;

pub use axioms::{
    check_all_axioms, check_axiom1, check_axiom2, check_axiom3, check_axiom4, check_duality,
    replay_axiom, Axiom, AxiomReport, AxiomSummary, Note,
};
pub use error::{Error, Result};
pub use incidence::{
    ElemSet, Element, IncidenceStructure, PlaneId, PlaneSet, PointId, PointSet, Sort,
};
pub use io::{parse_structure, serialize_structure, ParseError};
pub use lines::{
    all_lines, collinear_planes, collinear_points, line_census, line_through_planes,
    line_through_points, lines_meet, Line, LineCensus, LineInvariant, MeetResult,
};
pub use pg::{generate_pg3, generate_pg3_bounded, normalize, PrimeField, ProjVector};
pub use quantify::CheckOptions;
pub use report::{Elem, Report, Witness};
pub use search::{search_independence, SearchConfig, SearchMode, SearchReport};
pub use theorems::{
    check_meet, check_proper_pencil, check_theorem_duality, check_theorems, check_unique_plane,
    check_vy_axioms, check_vy_characterization, replay_theorem, Theorem, TheoremReport,
};
