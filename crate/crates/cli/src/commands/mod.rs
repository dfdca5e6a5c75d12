pub mod erratum;
pub mod spectrum;
pub mod suite;
pub mod verify;
pub mod wavecheck;
