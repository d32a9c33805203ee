//! CODATA 2018 values.

pub const MU0: f64 = 1.256_637_062_12e-6;
pub const HBAR: f64 = 1.054_571_817e-34;
pub const KB: f64 = 1.380_649e-23;
pub const C: f64 = 299_792_458.0;
pub const EPS0: f64 = 8.854_187_812_8e-12;
pub const MU_B: f64 = 9.274_010_078_3e-24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub mu0: f64,
    pub hbar: f64,
    pub kb: f64,
    pub c: f64,
    pub eps0: f64,
    pub mu_b: f64,
}

pub const CODATA: PhysicalConstants = PhysicalConstants {
    mu0: MU0,
    hbar: HBAR,
    kb: KB,
    c: C,
    eps0: EPS0,
    mu_b: MU_B,
};
