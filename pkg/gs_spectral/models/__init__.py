from .gray_scott import (
    GrayScottParams,
    GrayScottProblem,
    GrayScottReaction,
    ManufacturedSolution,
    example1,
    example2,
    example3,
    get_problem,
    manufactured_sources,
    reaction,
    with_params,
)
