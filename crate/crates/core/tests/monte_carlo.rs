use ncfree_core::mc::{self, McConfig};
use ncfree_core::rational::{int, rat};

#[test]
fn uniform_block_matches_exact_moments() {
    let cfg = McConfig::uniform(2, int(2), 512, 20, 2024);
    let exact = mc::exact_moments(&cfg, 6).unwrap();
    assert_eq!(exact[1], int(2));
    assert_eq!(exact[3], int(8));
    let rows = mc::compare(&cfg, &exact).unwrap();
    for r in &rows {
        eprintln!("{r}");
        assert!(r.pass, "{r}");
    }
}

#[test]
fn wrong_radius_is_flagged() {
    let cfg = McConfig::uniform(2, int(2), 64, 10, 7);
    let mut wrong = McConfig::uniform(2, int(3), 64, 10, 7).radii;
    wrong[0][0] = rat(5, 1);
    let exact = mc::exact_moments(
        &McConfig {
            radii: wrong,
            ..cfg.clone()
        },
        2,
    )
    .unwrap();
    let rows = mc::compare(&cfg, &exact).unwrap();
    assert!(!rows[1].pass, "{}", rows[1]);
}

#[test]
fn odd_moments_vanish_within_noise() {
    let cfg = McConfig::uniform(1, int(2), 128, 10, 3);
    let rows = mc::sample_block_moments(&cfg, 5).unwrap();
    for (n, mean, stderr) in rows {
        if n % 2 == 1 {
            assert!(
                mean.abs() <= 3.0 * stderr,
                "n={n} mean={mean} stderr={stderr}"
            );
        }
    }
}
