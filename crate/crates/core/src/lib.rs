//! Exact verification engine for character codegree sets of finite groups.

pub mod arith;
pub mod catalog;
pub mod codegree;
pub mod dixon;
pub mod perm;
pub mod verifier;
