//! Tight frames, frame coherence, discrete coherent states and Naimark
//! extension for finite-dimensional quantum states.

pub mod catalog;
pub mod coherence;
pub mod coherent_states;
pub mod density;
pub mod error;
pub mod frames;
pub mod linalg;
pub mod naimark;
pub mod sample;
pub mod sweep;

pub use error::{Error, Result};
