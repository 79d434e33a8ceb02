"""Human-in-the-loop evolutionary generator of urban FPS game levels."""

from .evaluation import (
    CoverMap,
    PlayabilityReport,
    cast_ray,
    cover_map,
    cover_score,
    find_choke_points,
    passes_gate,
    playability,
)
from .evolution import (
    ELITE_COUNT,
    POPULATION_SIZE,
    Candidate,
    GaParams,
    Generation,
    SelectionError,
    blend_crossover,
    gaussian_mutate,
    init_population,
    next_generation,
)
from .features import FEATURE_NAMES, FeatureVector, extract_features, feature_distance
from .intent import (
    AgentPolicy,
    DecisionTree,
    Label,
    TrainingError,
    TrainingSample,
    agent_select,
    classify,
    should_agent_act,
    train,
    tree_from_json,
    tree_to_json,
)
from .model import (
    CANVAS_UNITS,
    CELL_UNITS,
    GENOME_LENGTH,
    GRID_SIZE,
    PREFAB_COUNT,
    Cell,
    CellKind,
    EncodingError,
    MapGenome,
    MapLayout,
    PropKind,
    PropPlacement,
    ascii_map,
    decode,
    dump_level,
    layout_from_json,
    layout_to_json,
    repair,
    validate_level_json,
)
from .session import (
    Session,
    SessionStore,
    StateError,
    WrongTurnError,
    export_level,
    history_view,
    new_session,
    replay_transcript,
    state_view,
    submit_selection,
)

__version__ = "0.1.0"
