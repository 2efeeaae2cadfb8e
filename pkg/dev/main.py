import logging
from pathlib import Path

import gs_spectral as gs
from gs_spectral.harness import RunConfig

if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO)
    path_base = Path("write_files/convergence")
    # path_base = Path('/data/user/gs_spectral_files')

    # Desk-scale versions of the three convergence tables
    studies_dict = {
        "example2_temporal": dict(
            example="2", h_exp=(4,), sigma_exp=(3, 4, 5, 6), t_final=1.0
        ),
        "example2_spatial": dict(
            example="2", h_exp=(2, 3, 4), sigma_exp=(10,), t_final=1.0
        ),
        "example3_temporal": dict(
            example="3",
            h_exp=(2,),
            sigma_exp=(5, 6, 7, 8),
            ref_sigma_exp=9,
            t_final=10.0,
            snapshots=(0.0, 5.0, 10.0),
        ),
        # Example 1 needs sigma <= 4 / lambda_max to stay stable
        # "example1_spatial": dict(
        #     example="1", h_exp=(2, 3), sigma_exp=(16,), manufactured_sources=True
        # ),
    }

    study_names = [
        "example2_temporal",
        "example2_spatial",
        "example3_temporal",
    ]

    for q in [2, 3]:
        for study_name in study_names:
            print("\n>>> " + study_name + ", q=" + str(q))
            kwargs = studies_dict[study_name]
            write_dir = path_base / study_name
            config = RunConfig(q=q, out=write_dir, **kwargs)
            print(
                "--- "
                + str(len(config.h_exp))
                + " cell sizes, "
                + str(len(config.sigma_exp))
                + " time steps"
            )
            table = gs.run_convergence_study(config)
            print(table.format())
