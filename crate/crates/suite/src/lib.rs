//! Holds the `acceptance` test target; run it with
//! `cargo test -p carnot-suite --test acceptance -- --nocapture`.
