//! Benchmark helpers for the qtchar engine.
