//! SAT-based reasoning over abstract argumentation frameworks.
//!
//! The crate compiles the complete-labelling conditions of an argumentation
//! framework into CNF (six logically equivalent encodings), and enumerates
//! preferred extensions with a nested depth-first search driven by repeated
//! SAT calls. Around that core sit a brute-force reference oracle, random
//! instance generators, and a benchmark harness with IPC speed scoring.
//!
//! ```
//! use afsat::af::parse_apx;
//! use afsat::encoding::EncodingId;
//! use afsat::enumerate::{enumerate_preferred, Backend};
//!
//! let af = parse_apx("arg(a).\narg(b).\natt(a,b).\natt(b,a).").unwrap();
//! let result = enumerate_preferred(&af, EncodingId::C2, &Backend::default()).unwrap();
//! let names: Vec<Vec<String>> = result.extensions.iter().map(|e| af.extension_names(e)).collect();
//! assert_eq!(names, vec![vec!["a".to_string()], vec!["b".to_string()]]);
//! ```

pub mod af;
pub mod encoding;
pub mod oracle;
pub mod sat;
pub mod enumerate;
pub mod external;
pub mod generate;
pub mod bench;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/frameworks.md")]
    mod frameworks {}
    #[doc = include_str!("../../../book/src/encodings.md")]
    mod encodings {}
    #[doc = include_str!("../../../book/src/enumeration.md")]
    mod enumeration {}
    #[doc = include_str!("../../../book/src/solvers.md")]
    mod solvers {}
    #[doc = include_str!("../../../book/src/generators.md")]
    mod generators {}
    #[doc = include_str!("../../../book/src/benchmarking.md")]
    mod benchmarking {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
