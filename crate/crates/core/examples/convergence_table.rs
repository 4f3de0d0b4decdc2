//! Individual series terms and the running price as columns are added.

use fmls::{convergence_table, OptionSpec, StableModel, Truncation};

fn main() -> fmls::Result<()> {
    let spec = OptionSpec::new(3800.0, 4000.0, 0.01, 0.2, 1.0)?;
    let model = StableModel::new(1.7, &spec)?;
    let table = convergence_table(&model, &spec, &Truncation::fixed(8, 7)?)?;

    print!("{:>4}", "n");
    for m in 1..=table.m_max() {
        print!("{:>12}", format!("m={m}"));
    }
    println!();
    for n in 0..=table.n_max() {
        print!("{n:>4}");
        for m in 1..=table.m_max() {
            print!("{:12.4}", table.term(n, m));
        }
        println!();
    }
    print!("{:>4}", "call");
    for m in 1..=table.m_max() {
        print!("{:12.4}", table.partial_sum(m));
    }
    println!();
    Ok(())
}
