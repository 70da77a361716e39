//! Instance generation, LIBSVM ingestion, a timing harness and speedup
//! reports for the `simplex-proj` solvers.

pub mod dist;
pub mod error;
pub mod harness;
pub mod libsvm;
pub mod report;

pub use dist::{generate_instance, generate_vector, DistSpec};
pub use error::{BenchError, Result};
pub use harness::{read_csv, run_benchmark, write_csv, BenchConfig, BenchRecord};
pub use libsvm::{parse_libsvm, read_libsvm, write_libsvm, LibsvmData};
pub use report::{fairness_violations, render_table, speedup_report, write_report_csv, Baseline, ReportRow};
