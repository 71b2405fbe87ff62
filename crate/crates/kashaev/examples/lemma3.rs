//! Exhaustively check the eight R-matrix partial-sum identities for
//! N = 2..7 and print the worst deviation per identity.
//!
//!     cargo run --release --example lemma3

use kashaev::qarith::RootOfUnityContext;

fn main() -> kashaev::Result<()> {
    for n in 2..=7 {
        let ctx = RootOfUnityContext::new(n)?;
        let rep = ctx.lemma3_report();
        let devs: Vec<String> = rep.per_identity.iter().map(|d| format!("{d:.1e}")).collect();
        println!("N = {n}: max deviation {:.2e}  [{}]", rep.max_deviation, devs.join(", "));
    }
    Ok(())
}
