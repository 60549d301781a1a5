use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use rsxf_cli::container::{ContainerError, HEADER_LEN};
use rsxf_cli::{corrupt_bytes, decode_bytes, encode_bytes, thread_pool, CliError, ContainerHeader};
use rsxf_core::CodeParams;

fn payload(seed: u64, len: usize) -> Vec<u8> {
    let mut r = Xoshiro256StarStar::seed_from_u64(seed);
    let mut v = vec![0u8; len];
    r.fill_bytes(&mut v);
    v
}

fn rsxf(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rsxf"))
        .args(args)
        .current_dir(dir)
        .env_remove("RSXF_THREADS")
        .output()
        .expect("spawn rsxf")
}

#[test]
fn empty_file_is_header_only() {
    let pool = thread_pool(Some(1)).unwrap();
    let out = encode_bytes(&[], CodeParams::new(16, 15).unwrap(), &pool).unwrap();
    assert_eq!(out.len(), HEADER_LEN);
    assert_eq!(&out[..8], b"RSXF\x01\x10\x0f\x00");
    assert_eq!(&out[8..], &[0; 8]);
    let rep = decode_bytes(&out, &pool).unwrap();
    assert!(rep.chunks.is_empty());
    assert_eq!(rep.payload, Some(vec![]));
}

#[test]
fn one_byte_at_m16_is_one_full_chunk() {
    let pool = thread_pool(Some(1)).unwrap();
    let out = encode_bytes(&[0xa5], CodeParams::new(16, 15).unwrap(), &pool).unwrap();
    assert_eq!(out.len(), HEADER_LEN + (1 << 16) * 2);
    assert_eq!(u64::from_le_bytes(out[8..16].try_into().unwrap()), 1);
    assert_eq!(decode_bytes(&out, &pool).unwrap().payload, Some(vec![0xa5]));
}

#[test]
fn symbol_width_is_byte_aligned() {
    let pool = thread_pool(Some(1)).unwrap();
    for (m, t, w) in [(4u32, 2u32, 1usize), (8, 4, 1), (9, 5, 2), (12, 10, 2)] {
        let p = CodeParams::new(m, t).unwrap();
        let data = payload(m as u64, 300);
        let out = encode_bytes(&data, p, &pool).unwrap();
        let chunks = (data.len() * 8).div_ceil(p.k() * m as usize);
        assert_eq!(out.len(), HEADER_LEN + chunks * p.n() * w, "m = {m}");
    }
}

#[test]
fn round_trip_with_errors_up_to_capacity() {
    let pool = thread_pool(None).unwrap();
    for (m, t, len) in [(4u32, 2u32, 1000usize), (8, 4, 5000), (12, 10, 20000), (10, 1, 777)] {
        let p = CodeParams::new(m, t).unwrap();
        let data = payload(len as u64, len);
        let enc = encode_bytes(&data, p, &pool).unwrap();
        assert_eq!(decode_bytes(&enc, &pool).unwrap().payload.as_deref(), Some(&data[..]));
        for errors in [1, p.capacity()] {
            let bad = corrupt_bytes(&enc, errors, 99).unwrap();
            assert_ne!(bad, enc);
            let rep = decode_bytes(&bad, &pool).unwrap();
            assert_eq!(rep.payload.as_deref(), Some(&data[..]), "({m},{t}) {errors} errors");
            assert_eq!(rep.corrected(), errors * rep.chunks.len());
        }
    }
}

#[test]
fn corrupt_is_deterministic() {
    let pool = thread_pool(Some(1)).unwrap();
    let enc = encode_bytes(&payload(5, 2000), CodeParams::new(8, 4).unwrap(), &pool).unwrap();
    assert_eq!(corrupt_bytes(&enc, 0, 1).unwrap(), enc);
    let a = corrupt_bytes(&enc, 5, 42).unwrap();
    assert_eq!(a, corrupt_bytes(&enc, 5, 42).unwrap());
    assert_ne!(a, corrupt_bytes(&enc, 5, 43).unwrap());
    // exactly 5 symbols differ per chunk
    let n = 256;
    for (x, y) in enc[HEADER_LEN..].chunks(n).zip(a[HEADER_LEN..].chunks(n)) {
        assert_eq!(x.iter().zip(y).filter(|(p, q)| p != q).count(), 5);
    }
    assert!(matches!(corrupt_bytes(&enc, 257, 0), Err(CliError::TooManyErrors { .. })));
}

#[test]
fn beyond_capacity_reports_failure() {
    let pool = thread_pool(Some(1)).unwrap();
    let p = CodeParams::new(8, 4).unwrap();
    let enc = encode_bytes(&payload(8, 600), p, &pool).unwrap();
    let bad = corrupt_bytes(&enc, 40, 3).unwrap();
    let rep = decode_bytes(&bad, &pool).unwrap();
    assert_eq!(rep.failures(), rep.chunks.len());
    assert!(rep.payload.is_none());
}

#[test]
fn parsing_is_total() {
    let pool = thread_pool(Some(1)).unwrap();
    let enc = encode_bytes(&payload(1, 100), CodeParams::new(6, 3).unwrap(), &pool).unwrap();
    for cut in 0..enc.len() {
        assert!(decode_bytes(&enc[..cut], &pool).is_err(), "prefix {cut}");
        assert!(corrupt_bytes(&enc[..cut], 1, 0).is_err());
    }
    let mut longer = enc.clone();
    longer.push(0);
    assert!(matches!(
        decode_bytes(&longer, &pool),
        Err(CliError::Container(ContainerError::BodyLength { .. }))
    ));

    // Every single-byte change in the header is either rejected or still parses
    // into a well-formed container; nothing panics.
    let mut r = Xoshiro256StarStar::seed_from_u64(7);
    for pos in 0..HEADER_LEN {
        for _ in 0..32 {
            let mut g = enc.clone();
            g[pos] = r.next_u32() as u8;
            let _ = decode_bytes(&g, &pool);
        }
    }

    let mut wide = enc.clone();
    wide[HEADER_LEN] = 0xff;
    assert!(matches!(
        decode_bytes(&wide, &pool),
        Err(CliError::Container(ContainerError::SymbolRange { index: 0, .. }))
    ));
    let mut huge = enc.clone();
    huge[8..16].copy_from_slice(&(u64::MAX / 4).to_le_bytes());
    assert!(ContainerHeader::parse(&huge).is_err());
}

#[test]
fn binary_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let data = payload(11, 50_000);
    fs::write(dir.path().join("in.bin"), &data).unwrap();

    let o = rsxf(&["encode", "in.bin", "enc.rsxf", "--m", "16", "--t", "15"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = rsxf(&["corrupt", "enc.rsxf", "bad.rsxf", "--errors", "16384", "--seed", "5"], dir.path());
    assert!(o.status.success());
    let o = rsxf(&["decode", "bad.rsxf", "out.bin"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "chunk 0: 16384 errors corrected");
    assert_eq!(fs::read(dir.path().join("out.bin")).unwrap(), data);
}

#[test]
fn binary_decode_failure_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("in.bin"), payload(12, 500)).unwrap();
    assert!(rsxf(&["encode", "in.bin", "e", "--m", "8", "--t", "2"], dir.path()).status.success());
    assert!(rsxf(&["corrupt", "e", "b", "--errors", "30"], dir.path()).status.success());
    let o = rsxf(&["decode", "b", "out"], dir.path());
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAILED"));
    assert!(!dir.path().join("out").exists());

    fs::write(dir.path().join("junk"), b"RSXF\x01").unwrap();
    let o = rsxf(&["decode", "junk", "out"], dir.path());
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed container"));

    let o = rsxf(&["encode", "in.bin", "e", "--m", "8", "--t", "8"], dir.path());
    assert!(!o.status.success());
}

#[test]
fn thread_cap_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("in.bin"), payload(13, 3000)).unwrap();
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_rsxf"))
            .args(["encode", "in.bin", "e", "--m", "8", "--t", "4"])
            .current_dir(dir.path())
            .env("RSXF_THREADS", threads)
            .output()
            .unwrap()
    };
    assert!(run("2").status.success());
    let o = run("lots");
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("RSXF_THREADS"));
}

#[test]
fn bench_and_selftest_commands() {
    let dir = tempfile::tempdir().unwrap();
    let o = rsxf(&["bench", "--m", "10", "--t", "6", "--trials", "2", "--no-scaling"], dir.path());
    assert!(o.status.success());
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("encode:") && text.contains("decode:") && text.contains("encode ops:"));

    let o = rsxf(&["selftest"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    assert!(!String::from_utf8_lossy(&o.stdout).contains("FAILED"));
}
