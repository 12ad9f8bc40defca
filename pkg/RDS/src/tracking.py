"""Optional MLflow logging for verification sweeps."""

import os
import sys
from typing import Dict, Optional

# MLflow experiment tracking
TRACKING_ENV = "MLFLOW_TRACKING_URI"


def _warn(message: str, fallback: str = "→ Continuing locally"):
    print(f"[WARNING] {message}", file=sys.stderr)
    print(fallback, file=sys.stderr)


class SweepTracker:
    """
    Logs one sweep as one MLflow run. Inactive unless forced or the tracking
    URI is set; every MLflow failure downgrades the tracker to a no-op.
    """

    def __init__(self, experiment: str, run_name: str, enabled: Optional[bool] = None):
        self.experiment = experiment
        self.run_name = run_name
        self.tracking_uri = os.environ.get(TRACKING_ENV)
        self.active = bool(self.tracking_uri) if enabled is None else enabled or bool(self.tracking_uri)
        self._mlflow = None

    def __enter__(self):
        if not self.active:
            return self
        try:
            import mlflow

            if self.tracking_uri:
                mlflow.set_tracking_uri(self.tracking_uri)
                print("=" * 80, file=sys.stderr)
                print("Connecting to MLflow server...", file=sys.stderr)
                print(f"   MLflow URI: {self.tracking_uri}", file=sys.stderr)
                print("=" * 80, file=sys.stderr)
            mlflow.set_experiment(self.experiment)
            mlflow.start_run(run_name=self.run_name)
            self._mlflow = mlflow
        except Exception as e:
            _warn(f"MLflow unavailable: {e}")
            self.active = False
        return self

    def log_params(self, params: Dict[str, object]):
        if self._mlflow is None:
            return
        try:
            self._mlflow.log_params({k: str(v) for k, v in params.items()})
        except Exception as e:
            _warn(f"MLflow parameter upload failed: {e}")

    def log_metrics(self, metrics: Dict[str, float]):
        if self._mlflow is None:
            return
        try:
            self._mlflow.log_metrics({k: float(v) for k, v in metrics.items()})
        except Exception as e:
            _warn(f"MLflow metrics upload failed: {e}", "→ Metrics saved locally only")

    def log_artifact(self, path: str):
        if self._mlflow is None:
            return
        try:
            self._mlflow.log_artifact(path, artifact_path="reports")
            print(f"  → {os.path.basename(path)} uploaded to MLflow", file=sys.stderr)
        except Exception as e:
            _warn(f"Could not upload {path} to MLflow: {e}")

    def __exit__(self, exc_type, exc, tb):
        if self._mlflow is None:
            return False
        try:
            self._mlflow.end_run(status="FAILED" if exc_type else "FINISHED")
            print("  → MLflow run finished", file=sys.stderr)
        except Exception as e:
            _warn(f"MLflow run could not be closed: {e}")
        return False
