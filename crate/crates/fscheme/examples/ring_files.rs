//! The JSON ring-description format and the command-line pipeline built on
//! it: write a spec file, load it, and drive the same reports the binary
//! produces.
//!
//! Run with: `cargo run --example ring_files`

use fscheme::cli::run_captured;
use fscheme::specfile::{parse_ring_spec, RingSpec, RingSpecFile};

fn main() {
    // Describe T2(Z/3) structurally: no tables, just constructors.
    let spec = RingSpec::Triangular {
        base: Box::new(RingSpec::Zmod { n: 3 }),
        n: 2,
    };
    let file = RingSpecFile::new(spec);
    let json = file.to_json();
    println!("ring description:\n{json}\n");

    // Loading validates everything down to the ring axioms.
    let ring = parse_ring_spec(&json).unwrap();
    println!("loaded: {} of order {}", ring.label(), ring.order());
    assert_eq!(ring.order(), 27);

    // Raw tables are accepted too, and rejected when they are not a ring.
    let z2_tables = r#"{
        "schema": 1,
        "kind": "tables",
        "order": 2,
        "add": [[0, 1], [1, 0]],
        "mul": [[0, 0], [0, 1]],
        "zero": 0,
        "one": 1,
        "label": "bit"
    }"#;
    let bit = parse_ring_spec(z2_tables).unwrap();
    assert_eq!(bit.label(), "bit");
    println!("explicit tables load as {} (order {})", bit.label(), bit.order());

    // The CLI consumes the same files; drive it in-process. Write the
    // description to a temporary file and classify it.
    let dir = std::env::temp_dir().join("fscheme-ring-files-example");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t2z3.json");
    std::fs::write(&path, &json).unwrap();

    let (code, stdout, stderr) = run_captured(["fscheme", "classify", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{stderr}");
    println!("classify output:\n{stdout}");
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["commutative"], false);

    // Corpus keys work anywhere a file path does.
    let (code, stdout, _) = run_captured(["fscheme", "fullspec", "zmod6", "--dot"]);
    assert_eq!(code, 0);
    println!("Hasse diagram of F(Z/6):\n{stdout}");

    std::fs::remove_file(&path).ok();
}
