//! Regenerates the bundled example at `models/food_security.json` in
//! canonical form. Run from the repository root:
//! `cargo run -p deun-core --example regen_food_model`

use std::path::Path;

fn main() {
    let model = deun_core::food::food_security_model();
    let path = Path::new("models/food_security.json");
    deun_core::io::write_model(&model, path).expect("write model file");
    println!("wrote {}", path.display());
}
