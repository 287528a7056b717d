# Generated by Django 6.0.1 on 2026-10-18 09:12

import django.db.models.deletion
import django.utils.timezone
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('command', models.CharField(max_length=255)),
                ('created_at', models.DateTimeField(default=django.utils.timezone.now)),
                ('exit_status', models.IntegerField(default=0)),
                ('deterministic', models.BooleanField(default=False)),
                ('document', models.TextField(default='{}')),
            ],
            options={
                'ordering': ['-created_at', '-id'],
            },
        ),
        migrations.CreateModel(
            name='ClaimResult',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('claim_id', models.CharField(max_length=255)),
                ('anchor', models.CharField(blank=True, default='', max_length=255)),
                ('status', models.CharField(choices=[('pass', 'pass'), ('fail', 'fail')], default='pass', max_length=10)),
                ('evidence', models.TextField(blank=True, default='{}')),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='claims', to='foliations.verificationrun')),
            ],
        ),
    ]
