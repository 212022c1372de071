//! Acceptance suite for `starnode`; run it with `cargo test -p starnode-validation`.
