use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pole encountered: |Q(z)| below tolerance at z = {z}")]
    Pole { z: Complex64 },

    #[error("orbit escaped: |z| = {modulus:.3e} exceeded escape radius {radius:.3e}")]
    Escape { modulus: f64, radius: f64 },

    #[error("root solve failed: {0}")]
    RootSolve(String),

    #[error("degenerate polynomial: leading coefficient is effectively zero")]
    Degenerate,

    #[error("fiber degree {got} below map degree {expected}; fiber meets infinity")]
    FiberDegree { expected: usize, got: usize },

    #[error("rational map must have degree >= 2, got {0}")]
    DegreeTooLow(usize),

    #[error("no nodes at depth {0}")]
    EmptyLevel(u32),

    #[error("growth rate does not change sign on [{lo}, {hi}] (rho = {rho_lo:.4}, {rho_hi:.4})")]
    Bracket {
        lo: f64,
        hi: f64,
        rho_lo: f64,
        rho_hi: f64,
    },

    #[error("window error: {0}")]
    Window(String),

    #[error("sample spacing {spacing:.3e} too coarse for scale {delta:.3e} (need spacing <= delta/2)")]
    Sampling { spacing: f64, delta: f64 },

    #[error("point cloud is empty")]
    EmptyCloud,

    #[error("escape-time raster requires a polynomial map (constant denominator)")]
    NotPolynomial,

    #[error("seed appears to lie on or near the Julia set; forward orbit neither escapes nor settles")]
    SeedOnJulia,

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("toml error: {0}")]
    Toml(#[from] toml::de::Error),
}
