//! Representations of the circular zigzag `G_{2m}` and of finite stretches of
//! its infinite cyclic covering.

mod bars;
mod decompose;
mod grep;
mod window;

pub use bars::{lifted_angle, BarCode, BarKind, Decomposition, JordanBlock};
pub use decompose::{cover_bars, decompose_g2m, decompose_real, jordan_part};
pub use grep::{default_angles, GRep};
pub use window::{interval_window, window_sum, WindowBar, ZWindowRep};
