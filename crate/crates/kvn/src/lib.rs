//! Koopman-von Neumann phase-space mechanics, hybrid quantum-classical
//! dynamics on a joint Hilbert space, and the measurement chain built on top
//! of them: partition measurements, pre-measurement pointers, and POVM/Kraus
//! tomography. A symbolic operator algebra over the six canonical generators
//! provides exact commutators and Heisenberg equations to cross-check the
//! grid dynamics.

pub mod basis;
pub mod density;
pub mod engine;
pub mod error;
pub mod fft;
pub mod grid;
pub mod linalg;
pub mod operator;
pub mod state;
pub mod util;

pub use error::{KvnError, Result};
