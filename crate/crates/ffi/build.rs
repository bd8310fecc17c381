//! Generates include/k3kit.h from the public C ABI.

fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR set");
    let out = std::path::Path::new(&crate_dir).join("include").join("k3kit.h");
    std::fs::create_dir_all(out.parent().unwrap()).expect("create include dir");
    let mut config = cbindgen::Config::default();
    config.language = cbindgen::Language::C;
    config.cpp_compat = true;
    config.include_guard = Some("K3KIT_H".to_string());
    config.documentation = true;
    config.enumeration.prefix_with_name = true;
    match cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
    {
        Ok(bindings) => {
            bindings.write_to_file(&out);
        }
        Err(e) => {
            // header generation is best-effort; the library build must not
            // fail because of it (e.g. during cross-crate doc builds)
            println!("cargo:warning=header generation skipped: {e}");
        }
    }
    println!("cargo:rerun-if-changed=src/lib.rs");
}
