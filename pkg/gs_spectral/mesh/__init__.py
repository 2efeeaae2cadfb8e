from .structured import BOUNDARY_NORMALS, RectDomain, TriMesh, build_structured_mesh
