use percepthash::raster::{dct2, decode_pnm, encode_pnm, idct2, load_image, save_image, FloatPlane};
use percepthash::RasterImage;
use proptest::prelude::*;

fn image() -> impl Strategy<Value = RasterImage> {
    (1usize..24, 1usize..24, prop_oneof![Just(1usize), Just(3usize)]).prop_flat_map(|(w, h, ch)| {
        proptest::collection::vec(any::<u8>(), w * h * ch).prop_map(move |px| RasterImage::new(w, h, ch, px).unwrap())
    })
}

fn plane() -> impl Strategy<Value = FloatPlane> {
    (1usize..12, 1usize..12).prop_flat_map(|(w, h)| {
        proptest::collection::vec(-300.0f64..300.0, w * h).prop_map(move |v| FloatPlane::new(w, h, v).unwrap())
    })
}

proptest! {
    #[test]
    fn pnm_round_trip_is_bit_exact(img in image()) {
        let bytes = encode_pnm(&img);
        prop_assert_eq!(decode_pnm(&bytes).unwrap(), img);
    }

    #[test]
    fn dct_is_linear(p in plane(), k in -3.0f64..3.0) {
        let q = FloatPlane::new(p.width(), p.height(), p.values().iter().rev().copied().collect()).unwrap();
        let combo = FloatPlane::new(
            p.width(),
            p.height(),
            p.values().iter().zip(q.values()).map(|(a, b)| a + k * b).collect(),
        ).unwrap();
        let (dp, dq, dc) = (dct2(&p), dct2(&q), dct2(&combo));
        for ((a, b), c) in dp.values().iter().zip(dq.values()).zip(dc.values()) {
            prop_assert!((a + k * b - c).abs() < 1e-8);
        }
    }

    #[test]
    fn dct_inverts(p in plane()) {
        for (a, b) in p.values().iter().zip(idct2(&dct2(&p)).values()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}

#[test]
fn file_round_trip_and_comments() {
    let dir = tempfile::tempdir().unwrap();
    let img = RasterImage::from_fn(5, 4, 3, |x, y, c| (x * 50 + y * 10 + c) as u8).unwrap();
    let path = dir.path().join("x.ppm");
    save_image(&img, &path).unwrap();
    assert_eq!(load_image(&path).unwrap(), img);

    let gray = decode_pnm(b"P5\n# made by hand\n2 1\n# depth\n255\n\x10\x20").unwrap();
    assert_eq!(
        (gray.width(), gray.height(), gray.pixels()),
        (2, 1, &[0x10u8, 0x20][..])
    );
}

#[test]
fn constant_plane_has_only_dc() {
    let p = FloatPlane::new(8, 8, vec![3.0; 64]).unwrap();
    let d = dct2(&p);
    assert!((d.get(0, 0) - 24.0).abs() < 1e-12);
    assert!(d.values()[1..].iter().all(|v| v.abs() < 1e-12));
}
