#![allow(dead_code)]

pub mod naive;
pub mod oracle;
