"""The trefoil diagram and the regions cut out by the link surface.

The link of the toy hypersurface projects to a planar curve with three
transverse crossings; its complement has five regions. In three dimensions
the projected link surface of q(L) cuts space into six regions: a central
one, four neighbours and the unbounded one.
"""

# %%
from pathlib import Path

from lgpants.geometry.config import GeomConfig
from lgpants.geometry.export import polyline_csv, polyline_svg
from lgpants.geometry.link import trefoil_polyline
from lgpants.geometry.regions import link_regions_3d, polyline_crossings, region_count_2d

config = GeomConfig()

# %%
poly = trefoil_polyline(config)
n, points = polyline_crossings(poly)
print(f"{len(poly)} vertices, {n} crossings at")
print(points.round(5))

# %%
# Regions are counted on a raster; the check refines the grid once and
# refuses to answer if the count changes.
count = region_count_2d(poly, config, check_stability=True)
print("regions:", count.total, "bounded:", count.bounded)
print("Euler check, crossings + 2 =", n + 2)

# %%
# Write the curve for plotting.
out = Path("trefoil.svg")
out.write_text(polyline_svg(poly))
Path("trefoil.csv").write_text(polyline_csv(poly))
print("wrote", out.resolve())

# %%
for res in (48, 96):
    c = link_regions_3d(config, res=res)
    print(f"grid {res}^3: {c.total} regions, {c.bounded} bounded, {c.unbounded} unbounded")
