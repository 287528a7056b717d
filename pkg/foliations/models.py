import json

from django.db import models, transaction
from django.utils import timezone


class VerificationRun(models.Model):
    """One cli or view invocation, stored with its rendered JSON report."""

    command = models.CharField(max_length=255)
    created_at = models.DateTimeField(default=timezone.now)
    exit_status = models.IntegerField(default=0)
    deterministic = models.BooleanField(default=False)
    document = models.TextField(default="{}")

    class Meta:
        ordering = ["-created_at", "-id"]

    def __str__(self):
        return f"{self.command} ({self.exit_status})"

    @property
    def passed(self) -> bool:
        return self.exit_status == 0

    @classmethod
    def store(cls, report, deterministic: bool = False) -> "VerificationRun":
        with transaction.atomic():
            run = cls.objects.create(
                command=report.command,
                exit_status=report.exit_status,
                deterministic=deterministic,
                document=report.to_json(),
            )
            ClaimResult.objects.bulk_create([
                ClaimResult(
                    run=run,
                    claim_id=claim.id,
                    anchor=claim.anchor,
                    status=claim.status,
                    evidence=json.dumps(claim.evidence, ensure_ascii=False),
                )
                for claim in report.claims
            ])
        return run


class ClaimResult(models.Model):
    STATUS_CHOICES = [
        ("pass", "pass"),
        ("fail", "fail"),
    ]

    run = models.ForeignKey(VerificationRun, related_name="claims", on_delete=models.CASCADE)
    claim_id = models.CharField(max_length=255)
    anchor = models.CharField(max_length=255, default="", blank=True)
    status = models.CharField(max_length=10, choices=STATUS_CHOICES, default="pass")
    evidence = models.TextField(default="{}", blank=True)

    def __str__(self):
        return f"{self.claim_id} | {self.status}"

    def evidence_dict(self) -> dict:
        try:
            return json.loads(self.evidence or "{}")
        except json.JSONDecodeError:
            return {}
