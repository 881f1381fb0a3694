//! Acceptance criteria live in `tests/acceptance.rs`; run them with `cargo test --test acceptance`.
