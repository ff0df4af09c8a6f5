#![allow(dead_code, clippy::approx_constant)]
