# Randomized verification campaigns
# =================================
#
# Every structural property (convexity, covariance, partial-trace
# monotonicity, the two relations, ...) is available as a named campaign.
# Each trial draws its own generator from the campaign seed, so a violation
# would be reported with a seed that replays it exactly.
#
# Run with:  python demos/04_property_campaigns.py
# CLI form:  wyskew sample theorem2 --dim 3 --kraus 2 --trials 10000 --seed 7

from wyskew import sampling

cfg = sampling.SampleConfig(dimension=3, kraus_count=2, trials=500, seed=7)
for name in sampling.PROPERTIES:
    print(sampling.run_campaign(name, cfg))

# Replaying one trial by its per-trial seed:
seed = sampling.trial_seed(cfg.seed, 42)
print("\ntrial 42 seed", seed, "slack", sampling.run_trial("theorem1", cfg, seed))
