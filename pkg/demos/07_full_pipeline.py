# The whole pipeline on a generated corpus: documents + embeddings in,
# topics/assignments/metrics/manifest out.  The same run is available from
# the shell:
#
#   topickit run --corpus corpus.jsonl --embeddings docs.emb \
#       --algo kmeans --k 3 --scheme tf-rdf --theta 5000 --out out/

import json
import os
import tempfile

import numpy as np

from topickit.embedding import write_embeddings
from topickit.pipeline import RunConfig, compare_schemes, run

workdir = tempfile.mkdtemp()
rng = np.random.default_rng(19)

themes = {
    "space": ["rocket", "orbit", "launch", "satellite", "booster", "telescope"],
    "cooking": ["recipe", "flour", "oven", "butter", "saucepan", "simmer"],
    "chess": ["opening", "gambit", "endgame", "bishop", "castling", "tempo"],
}
corpus_path = os.path.join(workdir, "corpus.jsonl")
ids, labels = [], []
with open(corpus_path, "w") as fh:
    for label, words in themes.items():
        for d in range(40):
            doc_id = f"{label}{d:02d}"
            tokens = list(rng.choice(words, size=25)) + ["the", "and"] * 10
            rng.shuffle(tokens)
            fh.write(json.dumps({"id": doc_id, "text": " ".join(tokens), "label": label}) + "\n")
            ids.append(doc_id)
            labels.append(label)

centers = {label: rng.normal(0, 5, 12) for label in themes}
emb = np.vstack([centers[label] + rng.normal(0, 0.3, 12) for label in labels])
emb_path = os.path.join(workdir, "docs.emb")
write_embeddings(emb_path, ids, emb)

out_dir = os.path.join(workdir, "out")
config = RunConfig(
    corpus=corpus_path,
    embeddings=emb_path,
    out=out_dir,
    algo="kmeans",
    k=3,
    scheme="tf_rdf",
    theta=500.0,  # small corpus, small theta
    top_k=4,
    seed=0,
)
manifest = run(config)
print(f"artifacts in {out_dir}: {manifest.outputs}\n")

topics = json.loads(open(os.path.join(out_dir, "topics.json")).read())
for topic in topics["topics"]:
    terms = ", ".join(kw["term"] for kw in topic["keywords"])
    print(f"cluster {topic['cluster_id']}: {terms}")

metrics = json.loads(open(os.path.join(out_dir, "metrics.json")).read())
print(f"\nmetrics vs gold labels: purity={metrics['metrics']['purity']:.2f} "
      f"ari={metrics['metrics']['ari']:.2f} nmi={metrics['metrics']['nmi']:.2f}")

print("\nstage timings:", {k: round(v, 4) for k, v in manifest.timings.items()})
