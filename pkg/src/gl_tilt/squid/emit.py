from typing import List, Union

from pydantic import ValidationError
from sympy import Rational

from ..errors import ConfigurationError
from ..exactla import FieldSpec
from ..quivalg import Arrow, Path
from ..utils.logger import logger
from .builder import SquidQuiver, SquidVertex
from .schema import RelationTermModel, SquidArrowModel, SquidQuiverModel, SquidVertexModel

FORMATS = ("dot", "json")


def to_model(q: SquidQuiver) -> SquidQuiverModel:
    return SquidQuiverModel(
        d=q.d,
        weights=list(q.weights),
        vertices=[SquidVertexModel(name=v.name, alpha=list(v.alpha), twist=v.twist) for v in q.vertices],
        arrows=[SquidArrowModel(label=a.label, family=q.families[a.label], source=a.source, target=a.target) for a in q.arrows],
        relations=[[RelationTermModel(coeff=str(c), path=list(p.arrows)) for c, p in rel] for rel in q.relations],
        relation_families=list(q.relation_families),
    )


def _quote(text: str) -> str:
    return '"' + text.replace('"', '\\"') + '"'


def _vertex_label(v: SquidVertex) -> str:
    alpha = ",".join(map(str, v.alpha))
    return f"O_({alpha})({v.twist})"


def to_dot(q: SquidQuiver) -> str:
    lines = ["digraph squid {"]
    for v in q.vertices:
        lines.append(f"  {_quote(v.name)} [label={_quote(_vertex_label(v))}];")
    for a in q.arrows:
        lines.append(f"  {_quote(a.source)} -> {_quote(a.target)} [label={_quote(q.families[a.label])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit(q: SquidQuiver, fmt: str = "dot") -> str:
    """Render a squid as a DOT digraph or as JSON; the order follows the quiver."""
    if fmt == "dot":
        return to_dot(q)
    if fmt == "json":
        return to_model(q).model_dump_json(by_alias=True, indent=2) + "\n"
    raise ConfigurationError(f"Unknown format '{fmt}'; choose from {list(FORMATS)}")


def parse_quiver_json(data: Union[str, dict], field_spec: FieldSpec = FieldSpec()) -> SquidQuiver:
    """Read back the JSON written by ``emit``.

    Raises:
        ConfigurationError: If the document does not match the schema or names unknown arrows
    """
    try:
        model = SquidQuiverModel.model_validate_json(data) if isinstance(data, str) else SquidQuiverModel.model_validate(data)
    except ValidationError as e:
        logger.error(f"Quiver JSON does not match the schema: {e.error_count()} error(s)")
        raise ConfigurationError(f"Invalid quiver JSON: {e}") from e
    vertices = [SquidVertex(v.name, tuple(v.alpha), v.twist) for v in model.vertices]
    arrows = [Arrow(a.label, a.source, a.target) for a in model.arrows]
    by_label = {a.label: a for a in arrows}
    families = {a.label: a.family for a in model.arrows}
    relations = []
    for rel in model.relations:
        terms: List = []
        for term in rel:
            if not term.path or any(label not in by_label for label in term.path):
                raise ConfigurationError(f"Relation term {term.path} uses unknown arrows")
            source, target = by_label[term.path[0]].source, by_label[term.path[-1]].target
            terms.append((Rational(term.coeff), Path(source, target, tuple(term.path))))
        relations.append(tuple(terms))
    kinds = list(model.relation_families) or [None] * len(relations)
    if len(kinds) != len(relations):
        raise ConfigurationError(f"{len(kinds)} relation families for {len(relations)} relations")
    return SquidQuiver(model.d, tuple(model.weights), vertices, arrows, families, relations, kinds, field_spec)
