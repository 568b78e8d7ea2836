//! Regenerate the bundled derivation scripts: `cargo run -p zx-derive --example write_scripts`.

mod constructions;

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("scripts");
    for (name, script) in constructions::all() {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, script.to_json()).expect("write script");
        println!("{} ({} steps)", path.display(), script.steps.len());
    }
}
