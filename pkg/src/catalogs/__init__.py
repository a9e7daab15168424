"""
Catalogs Module
Catalog, model, spec and front files plus synthetic catalog generation
"""

from .catalog_io import load_catalog, write_catalog, format_value
from .model_parser import load_model, model_to_text, parse_expression, parse_model
from .generator import GeneratorSpec, PropertySpec, generate_catalog, load_generator_spec
from .front_export import FrontExporter, export_front, load_front, read_aggregate, write_aggregate
from .spec_files import load_subsystem_specs, subsystem_spec

__all__ = [
    "load_catalog", "write_catalog", "format_value",
    "load_model", "model_to_text", "parse_expression", "parse_model",
    "GeneratorSpec", "PropertySpec", "generate_catalog", "load_generator_spec",
    "FrontExporter", "export_front", "load_front", "read_aggregate", "write_aggregate",
    "load_subsystem_specs", "subsystem_spec",
]
