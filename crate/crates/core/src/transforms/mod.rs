//! Discrete Fourier and finite Zak transforms.
//!
//! Sign convention: the forward DFT is `X(a) = sum_b x(b) exp(+2*pi*i*a*b/N)`
//! and the Zak transform is `X_L(j,k) = sum_r x(k + r*M) exp(+2*pi*i*r*j/L)`.
//! The closed forms below are stated in the same convention.

mod dft;
mod gauss;
mod gtpf;
mod trace;
mod zak;

pub use dft::{dft_naive, dft_naive_signed, dft_naive_with, DFT_SIGN};
pub use gauss::{
    dft_character_closed, dft_character_closed_form, gauss_sum_direct, gauss_sum_factored,
    GaussSum,
};
pub use gtpf::{balanced_split, gtpf_dft, gtpf_dft_with, gtpf_permutation, GtpfPlan};
pub use trace::{normalized_trace_table, quadratic_gauss_sum, trace_normalized_dft};
pub use zak::{fzt_character_closed_form, fzt_direct, fzt_direct_signed, fzt_direct_with};
