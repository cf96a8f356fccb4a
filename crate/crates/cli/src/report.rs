//! JSON reports for single defining matrices and fans.

use kstar::defmat::{ambient_fan_labeled, fixed_points, ConeLabel, DefiningMatrix, Fan, FixedPoint};
use kstar::exactlin::cokernel;
use kstar::json::JsonInt;
use kstar::kstarindex::{hat_system_explicit, minor_sets, picard_index_formula, MinorSets};
use kstar::toricpic::{class_group, local_order_quotient, picard_direct, picard_via_hat, PicardData};
use kstar::{AbelianGroup, IntMatrix};
use serde::Serialize;

use crate::{Failure, Outcome, SCHEMA_VERSION};

#[derive(Serialize)]
pub struct LocalGroup {
    pub cone: String,
    pub rays: Vec<usize>,
    pub group: AbelianGroup,
}

#[derive(Serialize)]
pub struct IndexRoutes {
    /// Product of local class group orders over the torsion order.
    pub formula: JsonInt,
    pub via_hat: JsonInt,
    pub direct: JsonInt,
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub schema_version: u32,
    pub defining_matrix: DefiningMatrix,
    pub matrix: IntMatrix,
    pub class_group: AbelianGroup,
    pub fixed_points: Vec<FixedPoint>,
    pub local_groups: Vec<LocalGroup>,
    pub picard_index: IndexRoutes,
    pub picard: PicardData,
    /// Cokernel of the transpose of the explicit `P^`.
    pub phat_cokernel: AbelianGroup,
    pub minor_sets: MinorSets,
}

/// The report, and whether the independent routes agree.
pub fn analyze(dm: &DefiningMatrix) -> Outcome<(AnalyzeReport, Outcome)> {
    let violations = dm.validate();
    if !violations.is_empty() {
        return Err(Failure::Input(format!("invalid defining matrix: {violations:?}")));
    }
    let (fan, labels) = ambient_fan_labeled(dm);
    let direct = picard_direct(&fan)?;
    let via_hat = picard_via_hat(&fan)?;
    let formula = picard_index_formula(dm)?;
    let hat = hat_system_explicit(dm);
    let report = AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        defining_matrix: dm.clone(),
        matrix: dm.assemble(),
        class_group: direct.class_group.clone(),
        fixed_points: fixed_points(dm),
        local_groups: local_groups(&fan, Some(&labels), &direct),
        picard_index: IndexRoutes {
            formula: formula.clone().into(),
            via_hat: via_hat.pic_index.clone().into(),
            direct: direct.pic_index.clone().into(),
        },
        phat_cokernel: cokernel(&hat.phat.transpose()),
        minor_sets: minor_sets(dm),
        picard: direct,
    };
    let mut problems = Vec::new();
    if formula != report.picard.pic_index || via_hat.pic_index != report.picard.pic_index {
        problems.push(format!("Picard index routes disagree: formula {formula}, via P^ {}, direct {}", via_hat.pic_index, report.picard.pic_index));
    }
    if report.phat_cokernel.order().as_ref() != Some(&report.class_group.torsion_order()) {
        problems.push(format!("coker(P^*) = {} but Cl has torsion order {}", report.phat_cokernel, report.class_group.torsion_order()));
    }
    let m = &report.minor_sets;
    if m.gcd_m_p != m.gcd_m_prime_p || m.gcd_m_p != m.gcd_m_phat || m.gcd_m_phat != m.gcd_m_red_phat {
        problems.push("gcds of the minor sets differ".into());
    }
    let check = if problems.is_empty() { Ok(()) } else { Err(Failure::Check(problems.join("; "))) };
    Ok((report, check))
}

#[derive(Serialize)]
pub struct ToricReport {
    pub schema_version: u32,
    pub class_group: AbelianGroup,
    pub local_groups: Vec<LocalGroup>,
    pub picard: PicardData,
    pub via_hat_index: JsonInt,
    /// Product of the local class group orders divided by the torsion
    /// order, in lowest terms.
    pub local_order_quotient: [JsonInt; 2],
    /// Whether that quotient equals the Picard index.
    pub quotient_is_index: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn toric(fan: &Fan) -> Outcome<(ToricReport, Outcome)> {
    let cl = class_group(fan)?;
    let direct = picard_direct(fan)?;
    let via_hat = picard_via_hat(fan)?;
    let (num, den) = local_order_quotient(fan)?;
    let quotient_is_index = den == 1.into() && num == direct.pic_index;
    let note = (!quotient_is_index).then(|| {
        let q = if den == 1.into() { num.to_string() } else { format!("{num}/{den}") };
        format!("product of local orders over torsion order is {q}, Picard index is {}", direct.pic_index)
    });
    let check = if via_hat.pic_index == direct.pic_index {
        Ok(())
    } else {
        Err(Failure::Check(format!("Picard index via P^ {} differs from direct {}", via_hat.pic_index, direct.pic_index)))
    };
    let report = ToricReport {
        schema_version: SCHEMA_VERSION,
        class_group: cl,
        local_groups: local_groups(fan, None, &direct),
        via_hat_index: via_hat.pic_index.into(),
        local_order_quotient: [num.into(), den.into()],
        quotient_is_index,
        note,
        picard: direct,
    };
    Ok((report, check))
}

fn local_groups(fan: &Fan, labels: Option<&[ConeLabel]>, pic: &PicardData) -> Vec<LocalGroup> {
    fan.max_cones()
        .iter()
        .zip(&pic.local_groups)
        .enumerate()
        .map(|(c, (rays, group))| LocalGroup {
            cone: labels.map_or_else(|| c.to_string(), |l| l[c].to_string()),
            rays: rays.clone(),
            group: group.clone(),
        })
        .collect()
}
