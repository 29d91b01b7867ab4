"""Load sqrt(0.6, 0.2, 0.1, 0.1) and compare exact and sampled data marginals.

    python scripts/proof_of_concept.py --shots 1024 --seed 2021
"""

import argparse
import json

from qdcprep.experiments import ProofOfConceptConfig, proof_of_concept


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--shots", type=int, default=ProofOfConceptConfig.shots)
    p.add_argument("--seed", type=int, default=ProofOfConceptConfig.seed)
    p.add_argument("--method", default=ProofOfConceptConfig.method)
    args = p.parse_args(argv)
    result = proof_of_concept(ProofOfConceptConfig(args.shots, args.seed, args.method))
    print(json.dumps(result, indent=1))
    print("\nbasis  exact   sampled  z")
    for k, (e, s, z) in enumerate(zip(result["exact_marginals"], result["sampled_frequencies"],
                                      result["z_scores"])):
        print(f"{k:02b}     {e:.4f}  {s:.4f}   {z:+.2f}")


if __name__ == "__main__":
    main()
