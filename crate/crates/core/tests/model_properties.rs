//! Cross-module model properties that need whole-pipeline fixtures.

use botscope_core::botdetect::{
    train_logreg, FeatureVector, Hyperparameters, LabeledExample, UserClass, FEATURE_COUNT,
};
use botscope_core::rng::SeededRng;

fn skewed_example(rng: &mut SeededRng, label: u8) -> LabeledExample {
    let mut values = [0.0; FEATURE_COUNT];
    // Lognormal-ish counts with a class shift on three of them.
    for (j, v) in values.iter_mut().enumerate().take(5) {
        let shift = if label == 1 { 0.0 } else { 1.6 };
        let base = match j {
            0 => 4.0,
            1 => 3.0,
            2 => 3.2,
            3 => 2.0 + shift * 2.0,
            _ => 0.5 + shift,
        };
        *v = (base + rng.normal()).exp().round().max(0.0);
    }
    values[5] = f64::from(rng.chance(if label == 1 { 0.8 } else { 0.2 }));
    values[6] = f64::from(rng.chance(if label == 1 { 0.05 } else { 0.5 }));
    values[7] = f64::from(rng.chance(0.7));
    LabeledExample::new(
        FeatureVector {
            values,
            complete: true,
        },
        label,
        "prop",
    )
}

#[test]
fn rescaling_counts_barely_moves_decisions() {
    // Multiplying all raw count features by a constant and retraining must
    // change held-out predicted labels on at most 1% of a 2000-point set
    // (log1p+z-score absorbs scale up to the +1 shift).
    let mut rng = SeededRng::new(31_415);
    let train: Vec<LabeledExample> = (0..2000)
        .map(|i| skewed_example(&mut rng, (i % 2) as u8))
        .collect();
    let held_out: Vec<LabeledExample> = (0..2000)
        .map(|i| skewed_example(&mut rng, (i % 2) as u8))
        .collect();

    let scale = 10.0;
    let rescale = |ex: &LabeledExample| {
        let mut values = ex.features.values;
        for v in values.iter_mut().take(5) {
            *v *= scale;
        }
        LabeledExample::new(
            FeatureVector {
                values,
                complete: true,
            },
            ex.label,
            ex.source_id.clone(),
        )
    };
    let train_scaled: Vec<LabeledExample> = train.iter().map(rescale).collect();
    let held_out_scaled: Vec<LabeledExample> = held_out.iter().map(rescale).collect();

    let base = train_logreg(&train, Hyperparameters::default()).unwrap();
    let scaled = train_logreg(&train_scaled, Hyperparameters::default()).unwrap();

    let mut changed = 0;
    for (orig, resc) in held_out.iter().zip(&held_out_scaled) {
        let a = base.classify(&orig.features);
        let b = scaled.classify(&resc.features);
        if a != b {
            changed += 1;
        }
    }
    let fraction = f64::from(changed) / held_out.len() as f64;
    assert!(
        fraction <= 0.01,
        "{changed} of {} held-out labels changed ({fraction})",
        held_out.len()
    );
}

#[test]
fn classifier_separates_the_skewed_regimes() {
    let mut rng = SeededRng::new(8_888);
    let train: Vec<LabeledExample> = (0..1000)
        .map(|i| skewed_example(&mut rng, (i % 2) as u8))
        .collect();
    let test: Vec<LabeledExample> = (0..1000)
        .map(|i| skewed_example(&mut rng, (i % 2) as u8))
        .collect();
    let model = train_logreg(&train, Hyperparameters::default()).unwrap();
    let correct = test
        .iter()
        .filter(|e| (model.classify(&e.features) == UserClass::Bot) == (e.label == 1))
        .count();
    let acc = correct as f64 / test.len() as f64;
    assert!(acc > 0.9, "held-out accuracy {acc}");
}
