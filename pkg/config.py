"""Configuration Graphon Entropy v1.0"""
from pathlib import Path

# === CHEMINS ===
ROOT = Path(__file__).parent
OUTPUTS = ROOT / "outputs"
OUTPUTS.mkdir(exist_ok=True)

# === GRAPHONS MULTIPODAUX ===
GRAPHON = {
    "sum_tol": 1e-12,               # Tolérance sur Σ c_i = 1
    "symmetry_tol": 1e-12,          # Asymétrie max acceptée (puis symétrisation)
    "renormalize_tol": 1e-9,        # Au-delà de sum_tol mais en-deçà: renormalisation + warning
    "merge_tol": 1e-7,              # Fusion de podes (norme max des lignes)
    "max_subgraph_vertices": 8,     # Garde-fou coût k^v de hom_density
}

# === OPTIMISEUR (Lagrangien augmenté + polish KKT) ===
SOLVER = {
    "n_starts": 24,                 # Départs multi-start (structurés + aléatoires)
    "seed": 42,                     # Graine unique, dérivée par compteur
    "tol": 1e-8,                    # |ε−e| et |τ−t| à la convergence
    "k_max": 6,                     # k maximal pour maximize_entropy_auto
    "k_limit": 8,                   # k absolu accepté
    "mu_init": 1e4,                 # Pénalité initiale
    "mu_growth": 10.0,              # Croissance de μ quand |h| ne diminue pas assez
    "mu_shrink": 0.25,              # Réduction de |h| exigée pour mettre à jour λ
    "mu_max": 1e12,                 # Plafond de μ
    "mu_restart": 1e6,              # μ initial de la relance si le premier passage échoue
    "max_outer": 30,                # Itérations externes
    "inner_maxiter": 3000,          # Itérations L-BFGS-B par sous-problème
    "logit_clamp": 40.0,            # Blocs dans [e^-40, 1-e^-40] pendant le Lagrangien augmenté
    "share_clamp": 30.0,            # Bornes des logits de tailles de podes
    "seed_softening": 1e-3,         # Blocs 0/1 des graines ramenés à 1e-3 / 1-1e-3
    "polish": True,                 # Polish Levenberg-Marquardt du système KKT réduit
    "polish_tol": 1e-10,            # Résidu max accepté après polish
    "polish_entropy_slack": 1e-6,   # Perte d'entropie tolérée par le polish
    "premerge_tol": 1e-4,           # Fusion préalable des podes quasi identiques
    "prune_width": 1e-6,            # Podes plus fins élagués puis re-polish
    "distinct_entropy_tol": 1e-6,   # Optima concurrents: entropie à 1e-6 du meilleur
    "distinct_block_tol": 1e-4,     # ... et distants de plus de 1e-4
    "tie_tol": 1e-8,                # Égalité d'entropie entre valeurs de k
    "workers": 1,                   # Processus pour les départs d'un même point
}

# === DIAGNOSTICS VARIATIONNELS ===
VARIATIONAL = {
    "saturation_delta": 1e-9,       # Blocs < δ ou > 1-δ: inégalité unilatérale
    "max_condition": 1e10,          # Conditionnement max du système (α, β)
    "damping": 0.5,                 # Point fixe amorti du worth
    "max_iter": 10000,
    "fp_tol": 1e-12,
    "newton_tol": 1e-9,             # Résidu logit accepté après repli L-BFGS + Newton
    "dedup_tol": 1e-5,              # Dédoublonnage des maximiseurs (norme max)
    "worth_starts": 16,             # Départs aléatoires de maximize_worth
    "hessian_tol": 1e-9,            # Valeur propre max tolérée (Hessienne NSD)
    "optimality_tol": 1e-6,         # Seuil el_residual / worth_spread / worth_gap
}

# === PHASES ET PARAMÈTRES D'ORDRE ===
PHASE = {
    "rank_threshold": 1e-8,         # Seuil relatif du rang numérique
    "symmetry_tol": 1e-7,
    "max_order": 4,                 # Paramètres d'ordre p_2 .. p_4 dans les exports
    "order_limit": 6,               # 3k ≤ 18
}

# === ERGM ===
ERGM = {
    "visibility_tol": 1e-9,
    "marginal_tol": 1e-6,
    "k_max": 3,                     # k maximal des concurrents L-BFGS
    "n_starts": 8,                  # Départs aléatoires par k
}

# === ÉTUDES D'ÉCHELLE ===
SCALING = {
    "flat_t_values": [1e-3, 1e-4, 1e-5],
    "scallop_dt_values": [1e-3, 1e-4, 1e-5],
    "top_dt_values": [1e-2, 1e-3],
    "n_starts": 8,
}

# === BALAYAGE (SWEEP) ===
SWEEP = {
    "workers": 1,
    "float_format": "%.12g",
    "schema_version": "1",
    "svg_curve_points": 101,
}

# === CODES DE SORTIE (style sysexits) ===
EXIT_CODES = {
    "ok": 0,
    "solver_failure": 1,
    "infeasible": 2,
    "usage": 64,
    "data": 65,
    "cant_create": 73,
}
