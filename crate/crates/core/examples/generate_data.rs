//! Rewrites the bundled shift, rotation and optima files.
//!
//! `cargo run -p leo-core --example generate_data [output-dir]`

use std::path::PathBuf;

use leo_core::benchmarks::data::AuxData;

fn main() -> std::io::Result<()> {
    let root = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data"));
    for m in AuxData::generate().matrices() {
        let sub = if m.kind == "optima" { "composite" } else { "cec2019" };
        let dir = root.join(sub);
        std::fs::create_dir_all(&dir)?;
        let path = dir.join(m.file_name());
        std::fs::write(&path, m.render())?;
        println!("{}", path.display());
    }
    Ok(())
}
