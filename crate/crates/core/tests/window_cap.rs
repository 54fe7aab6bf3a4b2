// Kept in its own binary: it changes the process environment.
use bzcrystal_core::bz_affine::{AffineBz, MAX_WINDOW_ENV};
use bzcrystal_core::Kind;

#[test]
fn window_cap_from_environment() {
    // A cap below the initial radius cannot be met.
    std::env::set_var(MAX_WINDOW_ENV, "2");
    let r = AffineBz::from_word(3, &[(Kind::F, 0)]);
    std::env::set_var(MAX_WINDOW_ENV, "100");
    let ok = AffineBz::from_word(3, &[(Kind::F, 0)]);
    std::env::remove_var(MAX_WINDOW_ENV);
    assert!(r.is_err());
    assert!(ok.unwrap().is_some());
}
