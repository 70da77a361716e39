//! Holds the `acceptance` test target; run it with
//! `cargo test --release -p simplex-proj-acceptance`.
