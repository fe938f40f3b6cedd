//! Gap equations, thermodynamics and a finite Fock-space oracle for the
//! normal, standard BCS and thin-film superconducting states.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod consts;
pub mod error;
pub mod fockring;
pub mod gap;
pub mod material;
pub mod numerics;
pub mod thermo;

pub use error::{Error, Result};
