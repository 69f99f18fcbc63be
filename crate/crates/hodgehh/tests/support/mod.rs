#![allow(dead_code)]

pub mod bar_oracle;
