"""
Volume analyzer module for the control-ability analysis toolkit.

This module assembles analysis reports (analytic volume, oracle volume,
shape factors, warnings), convergence studies of the oracle toward the
analytic value, and the perturbation sequence approaching a Jordan block.
"""

import logging

import numpy as np

import config
from analyzers.base_analyzer import BaseAnalyzer
from models import AnalysisReport, Zonotope
from utils.analytic_volume import jordan_limit_check, region_volume, volume_single_jordan
from utils.errors import InputError
from utils.matspec import eig_real
from utils.shape_factors import decompose
from utils.zonotope import build_generators, oracle_volume

logger = logging.getLogger(__name__)

# Distinct eigenvalues closer than this trigger a warning
NEAR_REPEATED_GAP = 1e-3


class VolumeAnalyzer(BaseAnalyzer):
    """Analyzer for region volumes and their factor decomposition."""

    def __init__(self):
        super().__init__('volume')

    def _warnings(self, target, factors):
        warnings = []
        if factors.uncontrollable:
            warnings.append("Uncontrollable")
        eigenvalues = eig_real(target.A).eigenvalues
        gaps = np.diff(eigenvalues)
        if np.any((gaps > config.CLUSTER_TOL) & (gaps < NEAR_REPEATED_GAP)):
            warnings.append("NearRepeatedSpectrum")
        if not factors.same_sign_ok:
            warnings.append("MixedSignChain")
        for w in warnings:
            logger.warning(f"Analysis warning: {w}")
        return warnings

    def _report(self, system, region):
        volume, target = region_volume(system, region)
        factors, residual = decompose(target)
        return AnalysisReport(
            case=volume.case,
            n=system.n,
            region=region,
            volume=volume,
            factors=factors,
            residual=residual,
            warnings=self._warnings(target, factors),
        )

    def analyze(self, source, horizon=None, region="reach", threads=None):
        """
        Full analysis report for a system.

        Args:
            source: System file path or decoded system-file document
            horizon: Oracle horizon (defaults to config.DEFAULT_HORIZON)
            region: 'reach' or 'control'
            threads: Oracle worker cap

        Returns:
            dict following the AnalysisReport schema, or an error payload
        """
        return self.run("analyze", self._analyze, source, horizon, region, threads)

    def _analyze(self, source, horizon, region, threads):
        horizon = config.DEFAULT_HORIZON if horizon is None else int(horizon)
        if horizon < 1:
            raise InputError(f"horizon must be positive, got {horizon}")
        system = self.get_system(source)
        report = self._report(system, region)
        oracle = oracle_volume(build_generators(system, horizon, kind=region), threads)
        report.volume.with_oracle(oracle, horizon)
        self.log_action("analyze", {
            "case": report.case,
            "region": region,
            "analytic": report.volume.analytic,
            "oracle": oracle,
            "horizon": horizon,
        })
        return report.to_dict()

    def factors(self, source, region="reach"):
        """The factor block of ``analyze`` without the oracle."""
        return self.run("factors", self._factors, source, region)

    def _factors(self, source, region):
        system = self.get_system(source)
        report = self._report(system, region).to_dict()
        self.log_action("factors", {"case": report["case"], "f1": report["factors"]["f1"]})
        return {key: report[key] for key in ("case", "n", "region", "factors", "warnings")}

    def converge(self, source, max_horizon, step, region="reach", threads=None):
        """
        Oracle volume at horizons step, 2·step, ..., max_horizon against the analytic limit.

        Returns:
            dict with ``case``, ``analytic`` and ``rows`` of {N, oracle, analytic, gap}
        """
        return self.run("converge", self._converge, source, max_horizon, step, region, threads)

    def _converge(self, source, max_horizon, step, region, threads):
        if step < 1 or max_horizon < step:
            raise InputError(f"need 1 <= step <= max horizon, got step={step}, max={max_horizon}")
        system = self.get_system(source)
        volume, _ = region_volume(system, region)
        analytic = volume.analytic

        full = build_generators(system, max_horizon, kind=region)
        rows = []
        for N in range(step, max_horizon + 1, step):
            Z = Zonotope(full.generators[:, :N * system.r], N, region, full.convention)
            oracle = oracle_volume(Z, threads)
            gap = abs(analytic - oracle) / analytic if analytic > 0 else None
            rows.append({"N": N, "oracle": oracle, "analytic": analytic, "gap": gap})
            logger.debug(f"Horizon {N}: oracle {oracle:.17g}, gap {gap}")

        self.log_action("converge", {"case": volume.case, "rows": len(rows), "final_gap": rows[-1]["gap"]})
        return {"case": volume.case, "region": region, "analytic": analytic, "rows": rows}

    def limit(self, lam, size, deltas, b_last=1.0):
        """
        Distinct-eigenvalue volumes of the perturbed block for each delta, next to the Jordan value.

        Returns:
            dict with ``jordan_volume`` and ``rows`` of {delta, volume, jordan_volume, rel_error}
        """
        return self.run("limit", self._limit, lam, size, deltas, b_last)

    def _limit(self, lam, size, deltas, b_last):
        if size < 1:
            raise InputError(f"block size must be positive, got {size}")
        if not deltas or any(d <= 0 for d in deltas):
            raise InputError(f"deltas must be positive, got {deltas}")
        target = volume_single_jordan(lam, size, b_last)
        rows = [
            {"delta": delta, "volume": volume, "jordan_volume": target,
             "rel_error": abs(volume - target) / target if target > 0 else None}
            for delta, volume in jordan_limit_check(lam, size, b_last, deltas)
        ]
        self.log_action("limit", {"lambda": lam, "size": size, "jordan_volume": target})
        return {"lambda": lam, "size": size, "b_last": b_last, "jordan_volume": target, "rows": rows}
