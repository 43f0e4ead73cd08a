# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled raster kernel: sequential edge-function triangle fill.

Arithmetic matches holoviz.render.kernels.pure term for term (the build
disables FP contraction), so both backends produce bit-identical buffers.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport ceil, floor

cnp.import_array()


def rasterize(double[:, ::1] tris, cnp.uint8_t[:, :, ::1] color, double[:, ::1] depth):
    """Rasterize screen-space triangles into the given buffers, in place.

    tris: (T, 18) float64 from the geometry stage (positive-area winding).
    color: (H, W, 4) uint8. depth: (H, W) float64, +inf where unwritten.
    """
    cdef Py_ssize_t tri_count = tris.shape[0]
    cdef Py_ssize_t height = depth.shape[0]
    cdef Py_ssize_t width = depth.shape[1]
    cdef Py_ssize_t t, px, py
    cdef long xlo, xhi, ylo, yhi
    cdef double x0, y0, z0, x1, y1, z1, x2, y2, z2
    cdef double r0, g0, b0, r1, g1, b1, r2, g2, b2
    cdef double minx, maxx, miny, maxy, clo, chi
    cdef double area2, sx, sy, w0, w1, w2, f0, f1, f2, z, r, g, b, v
    cdef bint acc0, acc1, acc2
    cdef double dx, dy

    with nogil:
        for t in range(tri_count):
            x0 = tris[t, 0]; y0 = tris[t, 1]; z0 = tris[t, 2]
            x1 = tris[t, 3]; y1 = tris[t, 4]; z1 = tris[t, 5]
            x2 = tris[t, 6]; y2 = tris[t, 7]; z2 = tris[t, 8]
            r0 = tris[t, 9]; g0 = tris[t, 10]; b0 = tris[t, 11]
            r1 = tris[t, 12]; g1 = tris[t, 13]; b1 = tris[t, 14]
            r2 = tris[t, 15]; g2 = tris[t, 16]; b2 = tris[t, 17]

            minx = x0
            if x1 < minx: minx = x1
            if x2 < minx: minx = x2
            maxx = x0
            if x1 > maxx: maxx = x1
            if x2 > maxx: maxx = x2
            miny = y0
            if y1 < miny: miny = y1
            if y2 < miny: miny = y2
            maxy = y0
            if y1 > maxy: maxy = y1
            if y2 > maxy: maxy = y2

            clo = ceil(minx - 0.5)
            if clo < 0.0: clo = 0.0
            chi = floor(maxx - 0.5)
            if chi > width - 1.0: chi = width - 1.0
            if chi < clo: continue
            xlo = <long>clo; xhi = <long>chi
            clo = ceil(miny - 0.5)
            if clo < 0.0: clo = 0.0
            chi = floor(maxy - 0.5)
            if chi > height - 1.0: chi = height - 1.0
            if chi < clo: continue
            ylo = <long>clo; yhi = <long>chi

            area2 = (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0)

            # Top-left fill rule, y-down screen coords: boundary pixels
            # belong to top (dy == 0, dx > 0) and left (dy < 0) edges.
            dx = x2 - x1; dy = y2 - y1
            acc0 = (dy == 0.0 and dx > 0.0) or dy < 0.0
            dx = x0 - x2; dy = y0 - y2
            acc1 = (dy == 0.0 and dx > 0.0) or dy < 0.0
            dx = x1 - x0; dy = y1 - y0
            acc2 = (dy == 0.0 and dx > 0.0) or dy < 0.0

            for py in range(ylo, yhi + 1):
                sy = py + 0.5
                for px in range(xlo, xhi + 1):
                    sx = px + 0.5
                    w0 = (x2 - x1) * (sy - y1) - (y2 - y1) * (sx - x1)
                    if w0 < 0.0 or (w0 == 0.0 and not acc0):
                        continue
                    w1 = (x0 - x2) * (sy - y2) - (y0 - y2) * (sx - x2)
                    if w1 < 0.0 or (w1 == 0.0 and not acc1):
                        continue
                    w2 = (x1 - x0) * (sy - y0) - (y1 - y0) * (sx - x0)
                    if w2 < 0.0 or (w2 == 0.0 and not acc2):
                        continue
                    f0 = w0 / area2
                    f1 = w1 / area2
                    f2 = w2 / area2
                    z = f0 * z0 + f1 * z1 + f2 * z2
                    if z < depth[py, px]:
                        depth[py, px] = z
                        r = f0 * r0 + f1 * r1 + f2 * r2
                        g = f0 * g0 + f1 * g1 + f2 * g2
                        b = f0 * b0 + f1 * b1 + f2 * b2
                        v = r * 255.0 + 0.5
                        if v > 255.0: v = 255.0
                        color[py, px, 0] = <cnp.uint8_t>v
                        v = g * 255.0 + 0.5
                        if v > 255.0: v = 255.0
                        color[py, px, 1] = <cnp.uint8_t>v
                        v = b * 255.0 + 0.5
                        if v > 255.0: v = 255.0
                        color[py, px, 2] = <cnp.uint8_t>v
                        color[py, px, 3] = 255
