"""Complete, replayable record of alignment construction, dead ends included.

Every pattern leaf and every scored candidate gets one node; candidate
nodes reference exactly the two structures that were matched and
unified.  Node ids are dense and follow creation order, so the trail is
a DAG whose parents always precede their children, and the bottom-up
reading of any result is its ancestor trail.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import DanglingParent, TrailFull, UnknownNode
from .scorer import Score

KIND_PATTERN = "pattern_leaf"
KIND_ALIGNMENT = "alignment_node"

FATE_RETAINED = "retained"
FATE_PRUNED = "pruned"


def rejected(reason: str) -> str:
    return f"rejected:{reason}"


@dataclass
class AuditNode:
    """One recorded event: a leaf made available, or a candidate scored."""

    nid: int
    kind: str
    parents: tuple[int, ...]
    cycle: int
    fate: str
    score: Score | None = None
    hits: tuple[tuple[int, int], ...] | None = field(default=None, compare=False, repr=False)


class AuditTrail:
    """Append-only ordered list of nodes with a memory cap.

    Hitting the cap flips ``capped`` (the recorded fact) and raises
    ``TrailFull`` so the producer can stop; nodes already recorded stay
    intact and exportable.
    """

    def __init__(self, max_nodes: int = 100_000) -> None:
        self.nodes: list[AuditNode] = []
        self.max_nodes = max_nodes
        self.capped = False

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AuditTrail) and self.nodes == other.nodes

    def record(
        self,
        kind: str,
        parents: tuple[int, ...] = (),
        cycle: int = -1,
        fate: str = FATE_RETAINED,
        score: Score | None = None,
        hits: tuple[tuple[int, int], ...] | None = None,
    ) -> int:
        """Append a node and return its id; parents must already exist."""
        if kind == KIND_ALIGNMENT and len(parents) != 2:
            raise ValueError("an alignment node has exactly two parents")
        if kind == KIND_PATTERN and parents:
            raise ValueError("a pattern leaf has no parents")
        nid = len(self.nodes)
        for p in parents:
            if not 0 <= p < nid:
                raise DanglingParent(f"parent {p} not recorded before node {nid}")
        if nid >= self.max_nodes:
            self.capped = True
            raise TrailFull(f"audit trail reached its cap of {self.max_nodes} nodes")
        self.nodes.append(AuditNode(nid, kind, tuple(parents), cycle, fate, score, hits))
        return nid

    def node(self, nid: int) -> AuditNode:
        if not 0 <= nid < len(self.nodes):
            raise UnknownNode(f"no node with id {nid}")
        return self.nodes[nid]

    def ancestor_trail(self, target: int) -> list[AuditNode]:
        """Target first, then all transitive ancestors, newest first."""
        start = self.node(target)
        seen = {target}
        frontier = list(start.parents)
        while frontier:
            nid = frontier.pop()
            if nid in seen:
                continue
            seen.add(nid)
            frontier.extend(self.node(nid).parents)
        ordered = sorted(seen - {target}, reverse=True)
        return [start] + [self.nodes[n] for n in ordered]

    # -- export / import ---------------------------------------------------

    def export_json(self) -> str:
        """One object per node; byte-deterministic for equal inputs."""
        out = []
        for n in self.nodes:
            obj: dict[str, object] = {
                "id": n.nid,
                "kind": n.kind,
                "parents": list(n.parents),
                "cycle": n.cycle,
                "fate": n.fate,
            }
            if n.score is not None:
                obj["b_n"] = n.score.b_n
                obj["b_e"] = n.score.b_e
                obj["cd"] = n.score.cd
                obj["p_abs"] = n.score.p_abs
            out.append(obj)
        return json.dumps(out, sort_keys=True, separators=(",", ":"))

    def export_dot(self) -> str:
        """One graph node per audit node labeled "id (CD)", one edge per parent."""
        lines = ["digraph audit {"]
        for n in self.nodes:
            if n.score is None:
                label = str(n.nid)
            else:
                label = f"{n.nid} ({n.score.cd:.3f})"
            lines.append(f'  n{n.nid} [label="{label}"];')
        for n in self.nodes:
            for p in n.parents:
                lines.append(f"  n{p} -> n{n.nid};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "AuditTrail":
        """Rebuild a trail from ``export_json`` output."""
        data = json.loads(text)
        trail = cls(max_nodes=max(100_000, len(data)))
        for obj in sorted(data, key=lambda o: o["id"]):
            score = None
            if "cd" in obj:
                score = Score(obj["b_n"], obj["b_e"], obj["cd"], obj["p_abs"])
            trail.nodes.append(
                AuditNode(
                    obj["id"],
                    obj["kind"],
                    tuple(obj["parents"]),
                    obj["cycle"],
                    obj["fate"],
                    score,
                )
            )
        return trail
