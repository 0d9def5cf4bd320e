pub mod completion;
pub mod error;
pub mod json;
pub mod kv;
pub mod lebesgue;
pub mod matrix;
pub mod oracle;
pub mod parallel;
pub mod psd;
pub mod sample;
pub mod star;
pub mod tolerance;
