//! Fingerprint and name a handful of permutation groups.
//!
//! ```text
//! cargo run --example identify_groups -- "(1,2,3,4)" "(1,3)"
//! ```

use quandles::groupid::{self, catalog};
use quandles::perm::parse_cycles;
use quandles::PermGroup;

fn show(label: &str, g: &PermGroup) -> quandles::Result<()> {
    let fp = groupid::fingerprint(g)?;
    let orders: Vec<String> = fp
        .element_orders
        .iter()
        .map(|(o, c)| format!("{o}^{c}"))
        .collect();
    println!(
        "{label:<20} order {:>4}  abelian {:<5}  orders {:<24} -> {}",
        fp.order,
        fp.abelian,
        orders.join(" "),
        groupid::identify(g)?
    );
    Ok(())
}

fn main() -> quandles::Result<()> {
    let gens: Vec<String> = std::env::args().skip(1).collect();
    if !gens.is_empty() {
        let degree = 1 + gens
            .iter()
            .flat_map(|g| g.split(|c: char| !c.is_ascii_digit()))
            .filter_map(|s| s.parse::<usize>().ok())
            .max()
            .unwrap_or(1)
            - 1;
        let perms = gens
            .iter()
            .map(|g| parse_cycles(g, degree.max(1)))
            .collect::<quandles::Result<Vec<_>>>()?;
        return show(&gens.join(" "), &PermGroup::closure(degree.max(1), &perms)?);
    }
    show("Z_6", &catalog::cyclic_group(6))?;
    show("Z_2 x Z_2", &catalog::abelian_group(&[2, 2]))?;
    show("Z_2 x Z_6", &catalog::abelian_group(&[2, 6]))?;
    show("dihedral, 10-gon", &catalog::dihedral_group(10))?;
    show("S_4", &catalog::symmetric_group(4))?;
    show("A_5", &catalog::alternating_group(5))?;
    Ok(())
}
