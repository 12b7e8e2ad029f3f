use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use abelpol::document::{family_value, semiabelian_value, Document};
use abelpol::random::{random_coherent_family, random_semiabelian, FormKind};
use abelpol::semiabelian::verify_main_theorem_fiber;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let g = random_semiabelian(&mut rng, 2, 1, FormKind::Ample, Some(10)).unwrap();
    let doc = serde_json::to_string_pretty(&semiabelian_value(&g)).unwrap();
    println!("{doc}");
    let parsed = Document::parse(&doc).unwrap();
    println!("kind {}, fiber report {:?}", parsed.kind(), verify_main_theorem_fiber(&g));

    let f = random_coherent_family(&mut rng, 3).unwrap();
    println!("{}", serde_json::to_string(&family_value(&f)).unwrap());
}
