"""Yee-lattice update kernels.

All kernels operate on a row range [i0, i1) so the solver can dispatch
disjoint blocks to worker threads; every cell is written by exactly one
block and there are no reductions, so results are bit-identical for any
thread count.  CPML auxiliary (psi) arrays are full-size and updated in
the same pass; interior cells carry identity coefficients (b = 1,
c = 0, 1/kappa = 1) so the hot loops have no region branches.

Array staggering (cell units): 2D TM keeps Ez at nodes, Hx at
(i, j+1/2), Hy at (i+1/2, j).  3D uses the standard Yee placement with
Ex at (i+1/2, j, k) etc.  The trailing entry of every H array along its
staggered axes is never updated and stays zero; index wrap-around at a
lower loop bound of 0 therefore reads a zero, which realizes a
magnetic-wall (PMC) face.  Lower bounds of 1 and upper bounds of n-1
leave tangential E pinned at zero: a PEC face.
"""

import numba
import numpy as np

NOGIL_JIT = numba.njit(nogil=True, cache=True, fastmath=False)


# ---------------------------------------------------------------------------
# 2D TM kernels (Ez, Hx, Hy)
# ---------------------------------------------------------------------------

@NOGIL_JIT
def update_h_2d(i0, i1, ez, hx, hy, psi_hx, psi_hy,
                bh_x, ch_x, ikh_x, bh_y, ch_y, ikh_y, dtmu_dx, dtmu):
    nx, ny = ez.shape
    for i in range(i0, i1):
        for j in range(ny - 1):
            dez = ez[i, j + 1] - ez[i, j]
            p = bh_y[j] * psi_hx[i, j] + ch_y[j] * dez
            psi_hx[i, j] = p
            hx[i, j] -= dtmu_dx * ikh_y[j] * dez + dtmu * p
        if i < nx - 1:
            for j in range(ny):
                dez = ez[i + 1, j] - ez[i, j]
                p = bh_x[i] * psi_hy[i, j] + ch_x[i] * dez
                psi_hy[i, j] = p
                hy[i, j] += dtmu_dx * ikh_x[i] * dez + dtmu * p


@NOGIL_JIT
def update_e_2d(i0, i1, ez, hx, hy, psi_ezx, psi_ezy,
                be_x, ce_x, ike_x, be_y, ce_y, ike_y,
                mid, ca, cb, cbd, jlo, jhi):
    for i in range(i0, i1):
        for j in range(jlo, jhi):
            dhy = hy[i, j] - hy[i - 1, j]
            dhx = hx[i, j] - hx[i, j - 1]
            px = be_x[i] * psi_ezx[i, j] + ce_x[i] * dhy
            py = be_y[j] * psi_ezy[i, j] + ce_y[j] * dhx
            psi_ezx[i, j] = px
            psi_ezy[i, j] = py
            m = mid[i, j]
            ez[i, j] = (ca[m] * ez[i, j]
                        + cbd[m] * (ike_x[i] * dhy - ike_y[j] * dhx)
                        + cb[m] * (px - py))


# ---------------------------------------------------------------------------
# 3D kernels (Ex, Ey, Ez, Hx, Hy, Hz)
# ---------------------------------------------------------------------------

@NOGIL_JIT
def update_h_3d(i0, i1, ex, ey, ez, hx, hy, hz,
                psi_hx_y, psi_hx_z, psi_hy_z, psi_hy_x, psi_hz_x, psi_hz_y,
                bh_x, ch_x, ikh_x, bh_y, ch_y, ikh_y, bh_z, ch_z, ikh_z,
                dtmu_dx, dtmu):
    nx, ny, nz = ez.shape
    for i in range(i0, i1):
        for j in range(ny - 1):
            for k in range(nz - 1):
                dey_z = ey[i, j, k + 1] - ey[i, j, k]
                dez_y = ez[i, j + 1, k] - ez[i, j, k]
                pz = bh_z[k] * psi_hx_z[i, j, k] + ch_z[k] * dey_z
                py = bh_y[j] * psi_hx_y[i, j, k] + ch_y[j] * dez_y
                psi_hx_z[i, j, k] = pz
                psi_hx_y[i, j, k] = py
                hx[i, j, k] += (dtmu_dx * (ikh_z[k] * dey_z - ikh_y[j] * dez_y)
                                + dtmu * (pz - py))
        if i < nx - 1:
            for j in range(ny):
                for k in range(nz - 1):
                    dez_x = ez[i + 1, j, k] - ez[i, j, k]
                    dex_z = ex[i, j, k + 1] - ex[i, j, k]
                    px = bh_x[i] * psi_hy_x[i, j, k] + ch_x[i] * dez_x
                    pz = bh_z[k] * psi_hy_z[i, j, k] + ch_z[k] * dex_z
                    psi_hy_x[i, j, k] = px
                    psi_hy_z[i, j, k] = pz
                    hy[i, j, k] += (dtmu_dx * (ikh_x[i] * dez_x - ikh_z[k] * dex_z)
                                    + dtmu * (px - pz))
            for j in range(ny - 1):
                for k in range(nz):
                    dex_y = ex[i, j + 1, k] - ex[i, j, k]
                    dey_x = ey[i + 1, j, k] - ey[i, j, k]
                    py = bh_y[j] * psi_hz_y[i, j, k] + ch_y[j] * dex_y
                    px = bh_x[i] * psi_hz_x[i, j, k] + ch_x[i] * dey_x
                    psi_hz_y[i, j, k] = py
                    psi_hz_x[i, j, k] = px
                    hz[i, j, k] += (dtmu_dx * (ikh_y[j] * dex_y - ikh_x[i] * dey_x)
                                    + dtmu * (py - px))


@NOGIL_JIT
def update_e_3d(i0, i1, ex, ey, ez, hx, hy, hz,
                psi_ex_y, psi_ex_z, psi_ey_z, psi_ey_x, psi_ez_x, psi_ez_y,
                be_x, ce_x, ike_x, be_y, ce_y, ike_y, be_z, ce_z, ike_z,
                mx, my, mz, ca, cb, cbd,
                jlo, jhi, klo, khi, ilo, ihi):
    nx, ny, nz = ez.shape
    for i in range(i0, i1):
        # Ex: tangential to y/z faces.
        if i < nx - 1:
            for j in range(jlo, jhi):
                for k in range(klo, khi):
                    dhz_y = hz[i, j, k] - hz[i, j - 1, k]
                    dhy_z = hy[i, j, k] - hy[i, j, k - 1]
                    py = be_y[j] * psi_ex_y[i, j, k] + ce_y[j] * dhz_y
                    pz = be_z[k] * psi_ex_z[i, j, k] + ce_z[k] * dhy_z
                    psi_ex_y[i, j, k] = py
                    psi_ex_z[i, j, k] = pz
                    m = mx[i, j, k]
                    ex[i, j, k] = (ca[m] * ex[i, j, k]
                                   + cbd[m] * (ike_y[j] * dhz_y - ike_z[k] * dhy_z)
                                   + cb[m] * (py - pz))
        # Ey: tangential to x/z faces.
        if ilo <= i < ihi:
            for j in range(ny - 1):
                for k in range(klo, khi):
                    dhx_z = hx[i, j, k] - hx[i, j, k - 1]
                    dhz_x = hz[i, j, k] - hz[i - 1, j, k]
                    pz = be_z[k] * psi_ey_z[i, j, k] + ce_z[k] * dhx_z
                    px = be_x[i] * psi_ey_x[i, j, k] + ce_x[i] * dhz_x
                    psi_ey_z[i, j, k] = pz
                    psi_ey_x[i, j, k] = px
                    m = my[i, j, k]
                    ey[i, j, k] = (ca[m] * ey[i, j, k]
                                   + cbd[m] * (ike_z[k] * dhx_z - ike_x[i] * dhz_x)
                                   + cb[m] * (pz - px))
            # Ez: tangential to x/y faces.
            for j in range(jlo, jhi):
                for k in range(nz - 1):
                    dhy_x = hy[i, j, k] - hy[i - 1, j, k]
                    dhx_y = hx[i, j, k] - hx[i, j - 1, k]
                    px = be_x[i] * psi_ez_x[i, j, k] + ce_x[i] * dhy_x
                    py = be_y[j] * psi_ez_y[i, j, k] + ce_y[j] * dhx_y
                    psi_ez_x[i, j, k] = px
                    psi_ez_y[i, j, k] = py
                    m = mz[i, j, k]
                    ez[i, j, k] = (ca[m] * ez[i, j, k]
                                   + cbd[m] * (ike_x[i] * dhy_x - ike_y[j] * dhx_y)
                                   + cb[m] * (px - py))
